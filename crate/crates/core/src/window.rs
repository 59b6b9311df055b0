//! Integer-indexed views of real sequences.

use serde::{Deserialize, Serialize};

/// Anything that can supply `x_n` at integer indices.
pub trait XSource {
    /// `None` when `n` is outside the source's domain or the value cannot be produced.
    fn value_at(&self, n: i64) -> Option<f64>;
}

/// A contiguous run of values starting at `start`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexedWindow {
    pub start: i64,
    pub values: Vec<f64>,
}

impl IndexedWindow {
    pub fn new(start: i64, values: Vec<f64>) -> Self {
        IndexedWindow { start, values }
    }

    pub fn from_fn(start: i64, end: i64, mut f: impl FnMut(i64) -> f64) -> Self {
        IndexedWindow {
            start,
            values: (start..=end).map(&mut f).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Last covered index. Equals `start - 1` for an empty window.
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.start && n <= self.end()
    }

    pub fn get(&self, n: i64) -> Option<f64> {
        if self.contains(n) {
            Some(self.values[(n - self.start) as usize])
        } else {
            None
        }
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        self.start..=self.end()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.start + i as i64, *v))
    }

    pub fn push(&mut self, v: f64) {
        self.values.push(v);
    }
}

impl XSource for IndexedWindow {
    fn value_at(&self, n: i64) -> Option<f64> {
        self.get(n)
    }
}

/// Adapts a closure `n ↦ x_n` into an [`XSource`].
pub struct ClosedForm<F>(pub F);

impl<F: Fn(i64) -> f64> XSource for ClosedForm<F> {
    fn value_at(&self, n: i64) -> Option<f64> {
        let v = (self.0)(n);
        v.is_finite().then_some(v)
    }
}

impl<T: XSource + ?Sized> XSource for &T {
    fn value_at(&self, n: i64) -> Option<f64> {
        (**self).value_at(n)
    }
}
