use serde::Serialize;

/// Outcome of checking one hypothesis on a finite sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ConditionStatus {
    HoldsOnSample,
    /// Violated; `index` locates the violation when the condition is index-wise.
    FailsAtIndex {
        index: Option<i64>,
    },
    /// Only finite-horizon evidence exists; `supports` tells which way it points.
    HeuristicEvidence {
        supports: bool,
    },
    NotCheckable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionEntry {
    pub id: &'static str,
    #[serde(flatten)]
    pub status: ConditionStatus,
    pub detail: String,
    /// Inclusive index range the condition was examined on.
    pub checked_on: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "overall", rename_all = "kebab-case")]
pub enum Overall {
    HypothesesHold,
    /// Every entry holds, some only heuristically.
    HypothesesHoldHeuristically,
    /// Nothing failed outright, but this entry is unconfirmed.
    NotConfirmed {
        condition: &'static str,
    },
    Fails {
        condition: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub theorem: &'static str,
    pub entries: Vec<ConditionEntry>,
    #[serde(flatten)]
    pub overall: Overall,
}

impl ConditionReport {
    pub fn new(theorem: &'static str, entries: Vec<ConditionEntry>) -> Self {
        let overall = summarize(&entries);
        ConditionReport {
            theorem,
            entries,
            overall,
        }
    }

    pub fn entry(&self, id: &str) -> Option<&ConditionEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn holds(&self) -> bool {
        matches!(
            self.overall,
            Overall::HypothesesHold | Overall::HypothesesHoldHeuristically
        )
    }

    /// Plain-text rendering, one line per entry.
    pub fn render(&self) -> String {
        let mut out = format!("{}: {}\n", self.theorem, overall_text(&self.overall));
        for e in &self.entries {
            let status = match &e.status {
                ConditionStatus::HoldsOnSample => "holds-on-sample".to_string(),
                ConditionStatus::FailsAtIndex { index: Some(n) } => format!("fails-at-index({n})"),
                ConditionStatus::FailsAtIndex { index: None } => "fails".to_string(),
                ConditionStatus::HeuristicEvidence { supports: true } => {
                    "heuristic-evidence(for)".to_string()
                }
                ConditionStatus::HeuristicEvidence { supports: false } => {
                    "heuristic-evidence(against)".to_string()
                }
                ConditionStatus::NotCheckable => "not-checkable".to_string(),
            };
            out.push_str(&format!(
                "  {:<14} {:<28} [{}..{}] {}\n",
                e.id, status, e.checked_on.0, e.checked_on.1, e.detail
            ));
        }
        out
    }
}

fn overall_text(o: &Overall) -> String {
    match o {
        Overall::HypothesesHold => "hypotheses hold".into(),
        Overall::HypothesesHoldHeuristically => "hypotheses hold (heuristically for series)".into(),
        Overall::NotConfirmed { condition } => format!("not confirmed ({condition})"),
        Overall::Fails { condition } => format!("fails ({condition})"),
    }
}

fn summarize(entries: &[ConditionEntry]) -> Overall {
    if let Some(e) = entries
        .iter()
        .find(|e| matches!(e.status, ConditionStatus::FailsAtIndex { .. }))
    {
        return Overall::Fails { condition: e.id };
    }
    if let Some(e) = entries.iter().find(|e| {
        matches!(
            e.status,
            ConditionStatus::NotCheckable | ConditionStatus::HeuristicEvidence { supports: false }
        )
    }) {
        return Overall::NotConfirmed { condition: e.id };
    }
    if entries
        .iter()
        .any(|e| matches!(e.status, ConditionStatus::HeuristicEvidence { .. }))
    {
        Overall::HypothesesHoldHeuristically
    } else {
        Overall::HypothesesHold
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(id: &'static str, status: ConditionStatus) -> ConditionEntry {
        ConditionEntry {
            id,
            status,
            detail: String::new(),
            checked_on: (1, 10),
        }
    }

    #[test]
    fn overall_precedence() {
        let r = ConditionReport::new(
            "t",
            vec![
                entry("a", ConditionStatus::HoldsOnSample),
                entry("b", ConditionStatus::NotCheckable),
                entry("c", ConditionStatus::FailsAtIndex { index: Some(3) }),
            ],
        );
        assert_eq!(r.overall, Overall::Fails { condition: "c" });
        let r = ConditionReport::new(
            "t",
            vec![
                entry("a", ConditionStatus::HeuristicEvidence { supports: true }),
                entry("b", ConditionStatus::HoldsOnSample),
            ],
        );
        assert_eq!(r.overall, Overall::HypothesesHoldHeuristically);
        assert!(r.holds());
    }

    #[test]
    fn serializes_with_stable_names() {
        let r = ConditionReport::new(
            "theorem-2",
            vec![entry(
                "zs",
                ConditionStatus::HeuristicEvidence { supports: false },
            )],
        );
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["overall"], "not-confirmed");
        assert_eq!(v["condition"], "zs");
        assert_eq!(v["entries"][0]["status"], "heuristic-evidence");
        assert_eq!(v["entries"][0]["supports"], false);
        assert_eq!(v["entries"][0]["checked_on"][1], 10);
    }
}
