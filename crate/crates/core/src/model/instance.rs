use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance;

/// Single-hop problem: one node harvesting energy at `arrivals`, each update
/// occupying the channel for `service` time units, all updates delivered by
/// `deadline`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingleHopInstance {
    pub arrivals: Vec<f64>,
    pub service: f64,
    pub deadline: f64,
}

/// Source → relay → destination problem with offline-known energy arrivals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoHopInstance {
    pub source_arrivals: Vec<f64>,
    pub relay_arrivals: Vec<f64>,
    /// Source → relay service time `d`.
    pub source_service: f64,
    /// Relay → destination service time `d̄`.
    pub relay_service: f64,
    pub deadline: f64,
}

/// Non-fatal adjustments made while normalizing raw input.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputWarning {
    /// The named arrival list was not sorted and has been sorted.
    Reordered { list: &'static str },
    /// Source and relay lists had different lengths; both were cut to `kept`.
    Truncated { source: usize, relay: usize, kept: usize },
}

impl fmt::Display for InputWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputWarning::Reordered { list } => write!(f, "{list} arrivals were unsorted and have been sorted"),
            InputWarning::Truncated { source, relay, kept } => write!(
                f,
                "source has {source} arrivals and relay has {relay}; only the first {kept} of each can be used"
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `T ≥ sᵢ + (N−i+1)·d` (single hop).
    Arrival,
    /// `T ≥ N·d` (single hop).
    TotalService,
    /// `T ≥ s̄ᵢ + (N−i+1)·d̄`.
    RelayArrival,
    /// `T ≥ sᵢ + (N−i+1)·(d+d̄)`.
    SourceArrival,
}

/// One violated feasibility condition; `index` is 1-based.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub condition: Condition,
    /// The smallest deadline that would satisfy the condition.
    pub required: f64,
    pub deadline: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.condition {
            Condition::Arrival => "s_i + (N-i+1)*d",
            Condition::TotalService => "N*d",
            Condition::RelayArrival => "relay s_i + d_bar + (N-i)*(d+d_bar)",
            Condition::SourceArrival => "source s_i + (N-i+1)*(d+d_bar)",
        };
        write!(f, "i={}: T={} < {what} = {}", self.index, self.deadline, self.required)
    }
}

/// Outcome of a feasibility check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub violations: Vec<Violation>,
    pub warnings: Vec<InputWarning>,
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_feasible() {
            Ok(())
        } else {
            Err(Error::Infeasible(self.violations))
        }
    }
}

fn check_times(name: &str, xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::InvalidInstance(format!("{name} arrival list is empty")));
    }
    if let Some(bad) = xs.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(Error::InvalidInstance(format!(
            "{name} arrival times must be finite and non-negative, got {bad}"
        )));
    }
    Ok(())
}

fn check_duration(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::InvalidInstance(format!("{name} must be finite and non-negative, got {v}")));
    }
    Ok(())
}

/// Sorts in place; returns whether anything moved.
fn sort_times(xs: &mut [f64]) -> bool {
    let sorted = xs.windows(2).all(|w| w[0] <= w[1]);
    if !sorted {
        xs.sort_by(f64::total_cmp);
    }
    !sorted
}

impl SingleHopInstance {
    pub fn new(arrivals: Vec<f64>, service: f64, deadline: f64) -> Self {
        Self { arrivals, service, deadline }
    }

    pub fn len(&self) -> usize {
        self.arrivals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrivals.is_empty()
    }

    /// Rejects empty or non-finite input and sorts the arrivals.
    pub fn normalize(&self) -> Result<(Self, Vec<InputWarning>)> {
        check_times("", &self.arrivals).map_err(|_| {
            Error::InvalidInstance("arrival list must be non-empty with finite, non-negative times".into())
        })?;
        check_duration("service time", self.service)?;
        check_duration("deadline", self.deadline)?;
        let mut out = self.clone();
        let mut warnings = Vec::new();
        if sort_times(&mut out.arrivals) {
            warnings.push(InputWarning::Reordered { list: "single-hop" });
        }
        Ok((out, warnings))
    }

    /// Feasibility: `T ≥ sᵢ + (N−i+1)·d` for every `i`, and `T ≥ N·d`.
    pub fn validate(&self) -> Result<Verdict> {
        let (inst, warnings) = self.normalize()?;
        let n = inst.len();
        let (d, t) = (inst.service, inst.deadline);
        let mut violations = Vec::new();
        for (i, &s) in inst.arrivals.iter().enumerate() {
            let required = s + (n - i) as f64 * d;
            if !tolerance::geq(t, required) {
                violations.push(Violation { index: i + 1, condition: Condition::Arrival, required, deadline: t });
            }
        }
        let required = n as f64 * d;
        if !tolerance::geq(t, required) {
            violations.push(Violation { index: n, condition: Condition::TotalService, required, deadline: t });
        }
        Ok(Verdict { violations, warnings })
    }
}

impl TwoHopInstance {
    pub fn new(
        source_arrivals: Vec<f64>,
        relay_arrivals: Vec<f64>,
        source_service: f64,
        relay_service: f64,
        deadline: f64,
    ) -> Self {
        Self { source_arrivals, relay_arrivals, source_service, relay_service, deadline }
    }

    pub fn len(&self) -> usize {
        self.source_arrivals.len().min(self.relay_arrivals.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rejects empty or non-finite input, sorts both lists and truncates them
    /// to a common length. Energy beyond the shorter list can never be used
    /// since every update spends one packet at each node.
    pub fn normalize(&self) -> Result<(Self, Vec<InputWarning>)> {
        check_times("source", &self.source_arrivals)?;
        check_times("relay", &self.relay_arrivals)?;
        check_duration("source service time d", self.source_service)?;
        check_duration("relay service time d_bar", self.relay_service)?;
        check_duration("deadline", self.deadline)?;

        let mut out = self.clone();
        let mut warnings = Vec::new();
        if sort_times(&mut out.source_arrivals) {
            warnings.push(InputWarning::Reordered { list: "source" });
        }
        if sort_times(&mut out.relay_arrivals) {
            warnings.push(InputWarning::Reordered { list: "relay" });
        }
        let (ns, nr) = (out.source_arrivals.len(), out.relay_arrivals.len());
        if ns != nr {
            let kept = ns.min(nr);
            out.source_arrivals.truncate(kept);
            out.relay_arrivals.truncate(kept);
            warnings.push(InputWarning::Truncated { source: ns, relay: nr, kept });
        }
        Ok((out, warnings))
    }
}

/// Checks both feasibility families of a two-hop instance:
/// `T ≥ s̄ᵢ + d̄ + (N−i)·(d+d̄)` and `T ≥ sᵢ + (N−i+1)·(d+d̄)`.
///
/// The relay bound is the half-duplex one: after forwarding update `i` it
/// still has to receive and forward every later update. It implies the
/// weaker `T ≥ s̄ᵢ + (N−i+1)·d̄`, and together the two are exactly
/// feasibility of [`to_single_hop`].
pub fn validate_two_hop(instance: &TwoHopInstance) -> Result<Verdict> {
    let (inst, warnings) = instance.normalize()?;
    let n = inst.len();
    let (d, db, t) = (inst.source_service, inst.relay_service, inst.deadline);
    let mut violations = Vec::new();
    for i in 0..n {
        let remaining = (n - i) as f64;
        // The relay must also receive every later update, so each one after
        // the i-th costs d + d̄, not just d̄.
        let required = inst.relay_arrivals[i] + db + (remaining - 1.0) * (d + db);
        if !tolerance::geq(t, required) {
            violations.push(Violation { index: i + 1, condition: Condition::RelayArrival, required, deadline: t });
        }
        let required = inst.source_arrivals[i] + remaining * (d + db);
        if !tolerance::geq(t, required) {
            violations.push(Violation { index: i + 1, condition: Condition::SourceArrival, required, deadline: t });
        }
    }
    Ok(Verdict { violations, warnings })
}

/// Combines source and relay into one node: arrivals `max{s̄ᵢ, sᵢ+d}`,
/// service `d+d̄`, deadline `T+d`.
///
/// Expects a normalized instance (equal-length sorted lists).
pub fn to_single_hop(instance: &TwoHopInstance) -> SingleHopInstance {
    let d = instance.source_service;
    let arrivals = instance
        .source_arrivals
        .iter()
        .zip(&instance.relay_arrivals)
        .map(|(&s, &sb)| sb.max(s + d))
        .collect();
    SingleHopInstance {
        arrivals,
        service: d + instance.relay_service,
        deadline: instance.deadline + d,
    }
}

/// Either kind of instance, as read from an instance file.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    SingleHop(SingleHopInstance),
    TwoHop(TwoHopInstance),
}

/// On-disk layout: `{"source_arrivals":[...], "relay_arrivals":[...], "d":.., "d_bar":.., "T":..}`.
/// A single-hop file omits both relay fields.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    source_arrivals: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    relay_arrivals: Option<Vec<f64>>,
    d: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d_bar: Option<f64>,
    #[serde(rename = "T")]
    deadline: f64,
}

impl Instance {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        match (file.relay_arrivals, file.d_bar) {
            (Some(relay), Some(d_bar)) => Ok(Instance::TwoHop(TwoHopInstance::new(
                file.source_arrivals,
                relay,
                file.d,
                d_bar,
                file.deadline,
            ))),
            (None, None) => Ok(Instance::SingleHop(SingleHopInstance::new(
                file.source_arrivals,
                file.d,
                file.deadline,
            ))),
            (Some(_), None) => Err(Error::InvalidInstance("relay_arrivals given without d_bar".into())),
            (None, Some(_)) => Err(Error::InvalidInstance("d_bar given without relay_arrivals".into())),
        }
    }

    pub fn to_json_string(&self) -> String {
        let file = match self {
            Instance::SingleHop(i) => InstanceFile {
                source_arrivals: i.arrivals.clone(),
                relay_arrivals: None,
                d: i.service,
                d_bar: None,
                deadline: i.deadline,
            },
            Instance::TwoHop(i) => InstanceFile {
                source_arrivals: i.source_arrivals.clone(),
                relay_arrivals: Some(i.relay_arrivals.clone()),
                d: i.source_service,
                d_bar: Some(i.relay_service),
                deadline: i.deadline,
            },
        };
        serde_json::to_string(&file).expect("instance serializes")
    }

    /// Feasibility verdict for either kind.
    pub fn validate(&self) -> Result<Verdict> {
        match self {
            Instance::SingleHop(i) => i.validate(),
            Instance::TwoHop(i) => validate_two_hop(i),
        }
    }
}
