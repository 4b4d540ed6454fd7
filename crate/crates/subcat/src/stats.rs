//! Association statistics for verb-frame pairs.
//!
//! All three filters compare how often a frame occurs with a particular
//! verb against how often it occurs elsewhere, summarized by a 2x2
//! contingency table: `k1` occurrences of the frame among the `n1`
//! observations of the verb, and `k2` among the `n2` observations of all
//! other verbs.
//!
//! * the log likelihood ratio statistic `-2 log λ` for the hypothesis
//!   p(frame | verb) = p(frame | other verbs);
//! * the t-score for the difference of the two proportions;
//! * the one-sided binomial tail `H*(p; m, n)`, the probability of seeing
//!   `m` or more frame occurrences in `n` trials if the frame were a
//!   miscue appearing with probability `p` at any verb node.
//!
//! LLR and t-score accept *high* values; the miscue tail accepts *low*
//! values (it is a p-value against the "just noise" hypothesis).

use statrs::function::factorial::ln_factorial;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatError {
    #[error("contingency table needs n1 > 0 and n2 > 0 (got n1={n1}, n2={n2})")]
    EmptyGroup { n1: u64, n2: u64 },
    #[error("contingency table needs k <= n (got k1={k1}/n1={n1}, k2={k2}/n2={n2})")]
    CountsExceedTotals { k1: u64, n1: u64, k2: u64, n2: u64 },
    #[error("t-score is undefined: both sample variances are zero")]
    ZeroVariance,
    #[error("miscue probability must lie strictly between 0 and 1 (got {0})")]
    ProbOutOfRange(f64),
    #[error("binomial tail needs m <= n (got m={m}, n={n})")]
    TailBounds { m: u64, n: u64 },
}

/// 2x2 contingency table for one verb-frame pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContingencyCounts {
    /// Frame occurrences with the verb.
    pub k1: u64,
    /// Total observations of the verb.
    pub n1: u64,
    /// Frame occurrences with all other verbs.
    pub k2: u64,
    /// Total observations of all other verbs.
    pub n2: u64,
}

impl ContingencyCounts {
    fn validate(&self) -> Result<(), StatError> {
        if self.n1 == 0 || self.n2 == 0 {
            return Err(StatError::EmptyGroup {
                n1: self.n1,
                n2: self.n2,
            });
        }
        if self.k1 > self.n1 || self.k2 > self.n2 {
            return Err(StatError::CountsExceedTotals {
                k1: self.k1,
                n1: self.n1,
                k2: self.k2,
                n2: self.n2,
            });
        }
        Ok(())
    }
}

/// log L(p, n, k) = k log p + (n-k) log(1-p), with 0·log 0 taken as 0.
fn log_l(p: f64, n: u64, k: u64) -> f64 {
    let mut acc = 0.0;
    if k > 0 {
        acc += k as f64 * p.ln();
    }
    if n - k > 0 {
        acc += (n - k) as f64 * (1.0 - p).ln();
    }
    acc
}

/// The log likelihood ratio statistic `-2 log λ`.
///
/// λ compares the one-probability model p = (k1+k2)/(n1+n2) against the
/// two-probability model p1 = k1/n1, p2 = k2/n2. The statistic is
/// asymptotically χ² with one degree of freedom, is 0 when p1 = p2, and
/// grows as the two proportions diverge.
pub fn log_likelihood_ratio(c: ContingencyCounts) -> Result<f64, StatError> {
    c.validate()?;
    let (k1, n1, k2, n2) = (c.k1, c.n1, c.k2, c.n2);
    let p1 = k1 as f64 / n1 as f64;
    let p2 = k2 as f64 / n2 as f64;
    let p = (k1 + k2) as f64 / (n1 + n2) as f64;
    Ok(2.0 * (log_l(p1, n1, k1) + log_l(p2, n2, k2) - log_l(p, n1, k1) - log_l(p, n2, k2)))
}

/// Which variance the t-score denominator uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TScoreMode {
    /// Proportion variances: sqrt(p1(1-p1)/n1 + p2(1-p2)/n2).
    #[default]
    Default,
    /// Literal variant: the count-scaled variances σ²(n, p) = n·p·(1-p)
    /// are squared and summed under the root instead of the proportion
    /// variances. Kept for comparison with implementations that use the
    /// raw-count form.
    Paper,
}

/// t-score for the difference of the two proportions.
///
/// Positive when the frame is over-represented with the verb. Errors when
/// the denominator is zero (both proportions degenerate).
pub fn t_score(c: ContingencyCounts, mode: TScoreMode) -> Result<f64, StatError> {
    c.validate()?;
    let (n1, n2) = (c.n1 as f64, c.n2 as f64);
    let p1 = c.k1 as f64 / n1;
    let p2 = c.k2 as f64 / n2;
    let variance = match mode {
        TScoreMode::Default => p1 * (1.0 - p1) / n1 + p2 * (1.0 - p2) / n2,
        TScoreMode::Paper => {
            let s1 = n1 * p1 * (1.0 - p1);
            let s2 = n2 * p2 * (1.0 - p2);
            s1 * s1 + s2 * s2
        }
    };
    if variance <= 0.0 {
        return Err(StatError::ZeroVariance);
    }
    Ok((p1 - p2) / variance.sqrt())
}

/// log of the binomial coefficient C(n, k).
fn ln_choose(n: u64, k: u64) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Upper binomial tail H*(p; m, n) = Σ_{i=m..n} C(n,i) p^i (1-p)^(n-i).
///
/// Computed term-wise in log space, summed from `i = n` downward so that
/// the tail is exactly monotone non-increasing in `m`. `m = 0` returns
/// exactly 1. `p` must lie strictly in (0, 1).
pub fn binomial_tail(p: f64, m: u64, n: u64) -> Result<f64, StatError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(StatError::ProbOutOfRange(p));
    }
    if m > n {
        return Err(StatError::TailBounds { m, n });
    }
    if m == 0 {
        return Ok(1.0);
    }
    let (ln_p, ln_q) = (p.ln(), (1.0 - p).ln());
    let mut tail = 0.0;
    let mut i = n;
    loop {
        let ln_term = ln_choose(n, i) + i as f64 * ln_p + (n - i) as f64 * ln_q;
        tail += ln_term.exp();
        if i == m {
            break;
        }
        i -= 1;
    }
    Ok(tail.min(1.0))
}

/// Filter choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Llr,
    TScore,
    Miscue,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Llr => "llr",
            Method::TScore => "tscore",
            Method::Miscue => "miscue",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "llr" => Ok(Method::Llr),
            "tscore" => Ok(Method::TScore),
            "miscue" => Ok(Method::Miscue),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

impl TScoreMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            TScoreMode::Default => "default",
            TScoreMode::Paper => "paper",
        }
    }
}

impl std::fmt::Display for TScoreMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for TScoreMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "default" => Ok(TScoreMode::Default),
            "paper" => Ok(TScoreMode::Paper),
            other => Err(format!("unknown t-score mode {other:?}")),
        }
    }
}

/// Filter plus its acceptance threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodParams {
    pub method: Method,
    /// Acceptance cut-off: score >= threshold for LLR and t-score,
    /// score <= threshold for the miscue tail.
    pub threshold: f64,
    /// Miscue probability `p` of the binomial tail (miscue method only).
    pub miscue_prob: f64,
    pub tscore_mode: TScoreMode,
}

impl Default for MethodParams {
    fn default() -> Self {
        MethodParams {
            method: Method::Miscue,
            threshold: 0.05,
            miscue_prob: 0.05,
            tscore_mode: TScoreMode::Default,
        }
    }
}

/// Outcome of scoring one verb-frame pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Association {
    /// The raw statistic, `None` when it is undefined for these counts.
    pub score: Option<f64>,
    pub accepted: bool,
    /// Diagnostic when the statistic was undefined.
    pub note: Option<String>,
}

/// Applies the configured filter to one contingency table.
///
/// An undefined statistic is reported (not panicked on) and the pair is
/// rejected.
pub fn evaluate_association(c: ContingencyCounts, params: &MethodParams) -> Association {
    let outcome = match params.method {
        Method::Llr => log_likelihood_ratio(c).map(|s| (s, s >= params.threshold)),
        Method::TScore => t_score(c, params.tscore_mode).map(|s| (s, s >= params.threshold)),
        Method::Miscue => {
            binomial_tail(params.miscue_prob, c.k1, c.n1).map(|s| (s, s <= params.threshold))
        }
    };
    match outcome {
        Ok((score, accepted)) => Association {
            score: Some(score),
            accepted,
            note: None,
        },
        Err(e) => Association {
            score: None,
            accepted: false,
            note: Some(e.to_string()),
        },
    }
}
