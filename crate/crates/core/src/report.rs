use serde::Serialize;

use crate::asymptotics::Regime;

/// How a value of `ln D` was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    NumericEigen,
    NumericLu,
    AsymptoticEq2,
    AsymptoticEq3,
    AsymptoticEq5,
    AsymptoticEq6,
    MonteCarlo,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::NumericEigen => "numeric-eigen",
            Method::NumericLu => "numeric-lu",
            Method::AsymptoticEq2 => "asymptotic-eq2",
            Method::AsymptoticEq3 => "asymptotic-eq3",
            Method::AsymptoticEq5 => "asymptotic-eq5",
            Method::AsymptoticEq6 => "asymptotic-eq6",
            Method::MonteCarlo => "monte-carlo",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// A named summand of `ln D`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Component {
    pub name: String,
    pub value: f64,
}

/// A value of `ln D` together with how it was obtained.
///
/// For numeric methods `err_est` is the absolute difference between the two
/// finest discretization levels. For asymptotic methods it is the nominal
/// size of the neglected remainder with all unknown constants set to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub ln_d: f64,
    pub method: Method,
    pub err_est: f64,
    pub regime: Option<Regime>,
    pub components: Vec<Component>,
    /// Discretization order of the final numeric level, if any.
    pub order: Option<usize>,
    pub warnings: Vec<String>,
}

impl EvalReport {
    pub fn new(method: Method, ln_d: f64, err_est: f64) -> Self {
        EvalReport {
            ln_d,
            method,
            err_est,
            regime: None,
            components: Vec::new(),
            order: None,
            warnings: Vec::new(),
        }
    }

    pub(crate) fn with_component(mut self, name: &str, value: f64) -> Self {
        self.components.push(Component {
            name: name.to_string(),
            value,
        });
        self
    }

    pub fn component(&self, name: &str) -> Option<f64> {
        self.components
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.value)
    }
}
