use std::path::PathBuf;

use clap::Args;
use quasidiff::bundled::{self, FamilyParams};
use quasidiff::{EquationDocument, EquationSpec, OddRatio, SequenceSpec, ToleranceProfile};

use crate::exit::CliError;

#[derive(Debug, Args)]
pub struct EquationArgs {
    /// Equation document (TOML) or a bundled example name (see list-examples)
    pub equation: String,
    /// Exponent β of the first two bundled families, as "num/den"
    #[arg(long)]
    pub beta: Option<OddRatio>,
    /// Neutral delay δ = 2λ of the first two bundled families
    #[arg(long)]
    pub lambda: Option<u32>,
    /// Override the forcing deviation τ
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<i64>,
    /// Override the neutral deviation δ
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<i64>,
    /// Multiply d_n by this factor
    #[arg(long)]
    pub perturb_d: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ToleranceArgs {
    /// Relative residual tolerance [default: 1e-9]
    #[arg(long)]
    pub eps_residual: Option<f64>,
    /// Values this small relative to their neighbours count as zero [default: 1e-12]
    #[arg(long)]
    pub eps_sign: Option<f64>,
    /// Relative smallness for limit and tail evidence [default: 1e-8]
    #[arg(long)]
    pub eps_limit: Option<f64>,
    /// Fraction of the trajectory tail that verdicts are decided on [default: 0.5]
    #[arg(long)]
    pub suffix_fraction: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write a JSON report here
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the trajectory as CSV here
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

pub struct Loaded {
    pub label: String,
    pub document: EquationDocument,
    pub equation: EquationSpec,
}

fn family_defaults(name: &str) -> Option<FamilyParams> {
    match name {
        "example-1" => Some(FamilyParams::DEFAULT_EXAMPLE1),
        "example-2" => Some(FamilyParams::DEFAULT_EXAMPLE2),
        _ => None,
    }
}

impl EquationArgs {
    pub fn load(&self) -> Result<Loaded, CliError> {
        let mut tau = self.tau;
        let mut doc = if let Some(ex) = bundled::find(&self.equation) {
            let params = match family_defaults(ex.name) {
                Some(mut p) => {
                    p.beta = self.beta.unwrap_or(p.beta);
                    p.lambda = self.lambda.unwrap_or(p.lambda);
                    p.tau = tau.take().unwrap_or(p.tau);
                    Some(p)
                }
                None => {
                    self.reject_family_flags(ex.name)?;
                    None
                }
            };
            bundled::build(ex.name, params).expect("bundled name")
        } else {
            self.reject_family_flags(&self.equation)?;
            let text = std::fs::read_to_string(&self.equation)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", self.equation)))?;
            EquationDocument::parse(&text)
                .map_err(|e| CliError::usage(format!("{}: {e}", self.equation)))?
        };
        if let Some(t) = tau {
            doc.tau = t;
        }
        if let Some(d) = self.delta {
            doc.delta = d;
        }
        if self.tau.is_some() || self.delta.is_some() {
            doc.n0 = doc.n0.max(1).max(doc.delta).max(doc.tau);
        }
        if let Some(k) = self.perturb_d {
            doc.d = SequenceSpec::mul(vec![SequenceSpec::constant(k), doc.d.clone()]);
        }
        let equation = doc
            .to_equation()
            .map_err(|e| CliError::usage(format!("{}: {e}", self.equation)))?;
        Ok(Loaded {
            label: self.equation.clone(),
            document: doc,
            equation,
        })
    }

    fn reject_family_flags(&self, name: &str) -> Result<(), CliError> {
        if self.beta.is_some() || self.lambda.is_some() {
            return Err(CliError::usage(format!(
                "--beta and --lambda apply to example-1 and example-2 only, not {name}"
            )));
        }
        Ok(())
    }
}

impl ToleranceArgs {
    pub fn profile(&self) -> Result<ToleranceProfile, CliError> {
        let mut t = ToleranceProfile::default();
        t.eps_residual = self.eps_residual.unwrap_or(t.eps_residual);
        t.eps_sign = self.eps_sign.unwrap_or(t.eps_sign);
        t.eps_limit = self.eps_limit.unwrap_or(t.eps_limit);
        t.suffix_fraction = self.suffix_fraction.unwrap_or(t.suffix_fraction);
        t.validate().map_err(|e| CliError::usage(e.to_string()))?;
        Ok(t)
    }
}
