use jacsyz_core::exactla::{is_prime_u64, PrimeField};
use jacsyz_core::syzres::{Arithmetic, ResolveOptions};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Work over `F_p` instead of certifying over `ℚ`.
    pub prime: Option<u64>,
    /// Generator search bound; `2d` when unset.
    pub generator_bound: Option<u32>,
    pub saturation: bool,
    pub format: Format,
    pub seed: u64,
    pub escalation_cap: u32,
    /// Include wall-clock timings in reports.
    pub timing: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            prime: None,
            generator_bound: None,
            saturation: false,
            format: Format::Text,
            seed: 0,
            escalation_cap: 3,
            timing: false,
        }
    }
}

pub const MIN_PRIME: u64 = 1 << 20;

impl Config {
    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(p) = self.prime {
            if p <= MIN_PRIME || !is_prime_u64(p) {
                return Err(CliError::usage(format!("--prime {p}: need a prime above 2^20")));
            }
            PrimeField::new(p).map_err(|e| CliError::usage(format!("--prime {p}: {e}")))?;
        }
        Ok(())
    }

    pub fn prime_field(&self) -> Option<PrimeField> {
        self.prime.and_then(|p| PrimeField::new(p).ok())
    }

    pub fn arithmetic(&self) -> Arithmetic {
        self.prime_field().map(Arithmetic::Prime).unwrap_or(Arithmetic::Rational)
    }

    /// Prime used by the search screen: the configured one or the default.
    pub fn screening_field(&self) -> PrimeField {
        self.prime_field().unwrap_or_else(PrimeField::default_field)
    }

    pub fn resolve_options(&self) -> ResolveOptions {
        ResolveOptions {
            arithmetic: self.arithmetic(),
            bound: self.generator_bound,
            escalation_cap: self.escalation_cap,
        }
    }

    pub fn arithmetic_label(&self) -> String {
        match self.prime {
            Some(p) => format!("prime:{p}"),
            None => "rational".into(),
        }
    }
}
