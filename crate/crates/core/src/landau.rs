//! The recursive Landau-type bound γ and the small-k(B) classification check.
//!
//! `γ(1) = 1` and `γ(k) = γ(k-1) · max{α(m), β(m+1)^m}` with `m = γ(k-1)!·k`.
//! The values explode after two or three steps, so evaluation saturates at
//! `10^max_digits`: every quantity is either exact or an exact lower bound.
//! Lower bounds stay sound because every operation involved (products,
//! factorials, powers, and the monotone oracles) is monotone in its inputs.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::defect::DefectDatum;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DIGITS: u32 = 10_000;

/// A quantity that is either known exactly or bounded below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Magnitude {
    Exact(BigUint),
    AtLeast(BigUint),
}

impl Magnitude {
    pub fn lower(&self) -> &BigUint {
        match self {
            Magnitude::Exact(x) | Magnitude::AtLeast(x) => x,
        }
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            Magnitude::Exact(x) => Some(x),
            Magnitude::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Exact(x) => write!(f, "{x}"),
            Magnitude::AtLeast(x) => {
                let digits = x.to_string().len();
                write!(f, ">=10^{}", digits.saturating_sub(1))
            }
        }
    }
}

/// Saturating arithmetic with cap `10^max_digits`.
struct Sat {
    cap: BigUint,
}

impl Sat {
    fn new(max_digits: u32) -> Sat {
        Sat { cap: BigUint::from(10u32).pow(max_digits) }
    }

    fn clamp(&self, x: BigUint, exact: bool) -> Magnitude {
        if x >= self.cap {
            Magnitude::AtLeast(self.cap.clone())
        } else if exact {
            Magnitude::Exact(x)
        } else {
            Magnitude::AtLeast(x)
        }
    }

    fn mul(&self, a: &Magnitude, b: &Magnitude) -> Magnitude {
        let exact = a.exact().is_some() && b.exact().is_some();
        self.clamp(a.lower() * b.lower(), exact)
    }

    fn succ(&self, a: &Magnitude) -> Magnitude {
        match a {
            Magnitude::Exact(x) => self.clamp(x + 1u32, true),
            other => other.clone(),
        }
    }

    fn max(&self, a: &Magnitude, b: &Magnitude) -> Magnitude {
        let exact = a.exact().is_some() && b.exact().is_some();
        self.clamp(a.lower().max(b.lower()).clone(), exact)
    }

    fn factorial(&self, a: &Magnitude) -> Magnitude {
        let n = a.lower();
        let mut acc = BigUint::one();
        let mut i = BigUint::from(2u32);
        while &i <= n {
            acc *= &i;
            if acc >= self.cap {
                return Magnitude::AtLeast(self.cap.clone());
            }
            i += 1u32;
        }
        self.clamp(acc, a.exact().is_some())
    }

    /// Left-to-right binary powering; every partial product is a lower bound
    /// of the full power, so saturating early is sound.
    fn pow(&self, base: &Magnitude, exp: &Magnitude) -> Magnitude {
        let exact = base.exact().is_some() && exp.exact().is_some();
        let (b, e) = (base.lower(), exp.lower());
        if e.is_zero() {
            return self.clamp(BigUint::one(), exact);
        }
        if b <= &BigUint::one() {
            return self.clamp(b.clone(), exact);
        }
        let mut acc = BigUint::one();
        for i in (0..e.bits()).rev() {
            acc = &acc * &acc;
            if e.bit(i) {
                acc *= b;
            }
            if acc >= self.cap {
                return Magnitude::AtLeast(self.cap.clone());
            }
        }
        self.clamp(acc, exact)
    }
}

#[derive(Clone, Debug)]
enum Rule {
    Identity,
    Square,
    Table(BTreeMap<BigUint, BigUint>),
}

/// A monotone map on positive integers standing in for α or β.
#[derive(Clone, Debug)]
pub struct BoundOracle {
    name: String,
    rule: Rule,
    last: Option<(BigUint, BigUint)>,
}

impl BoundOracle {
    pub fn identity() -> BoundOracle {
        BoundOracle { name: "identity".into(), rule: Rule::Identity, last: None }
    }

    pub fn square() -> BoundOracle {
        BoundOracle { name: "square".into(), rule: Rule::Square, last: None }
    }

    /// Table oracle from lines `n value`; `#` comments and blank lines are skipped.
    pub fn from_table(name: &str, text: &str) -> Result<BoundOracle> {
        let mut table = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let parse = |s: &str| {
                s.parse::<BigUint>().map_err(|_| Error::Parse { line: i + 1, message: format!("bad integer \"{s}\"") })
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse { line: i + 1, message: "expected \"n value\"".into() });
            }
            let (n, v) = (parse(fields[0])?, parse(fields[1])?);
            if n.is_zero() || v.is_zero() {
                return Err(Error::Parse { line: i + 1, message: "entries must be positive".into() });
            }
            if table.insert(n, v).is_some() {
                return Err(Error::Parse { line: i + 1, message: "duplicate argument".into() });
            }
        }
        Ok(BoundOracle { name: name.into(), rule: Rule::Table(table), last: None })
    }

    /// `identity`, `square`, or a path to a table file.
    pub fn from_spec(spec: &str) -> Result<BoundOracle> {
        match spec {
            "identity" => Ok(BoundOracle::identity()),
            "square" => Ok(BoundOracle::square()),
            path => {
                let text = std::fs::read_to_string(Path::new(path))
                    .map_err(|e| Error::Input(format!("cannot read oracle table {path}: {e}")))?;
                BoundOracle::from_table(path, &text)
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Evaluates at an exact argument, checking monotonicity against the
    /// previous query.
    pub fn eval(&mut self, n: &BigUint) -> Result<BigUint> {
        let v = match &self.rule {
            Rule::Identity => n.clone(),
            Rule::Square => n * n,
            Rule::Table(t) => t.get(n).cloned().ok_or_else(|| Error::OracleUndefined {
                oracle: self.name.clone(),
                argument: n.to_string(),
            })?,
        };
        if let Some((pn, pv)) = &self.last {
            if (n >= pn && &v < pv) || (n <= pn && &v > pv) {
                return Err(Error::OracleNotMonotonic {
                    oracle: self.name.clone(),
                    detail: format!("f({pn}) = {pv} but f({n}) = {v}"),
                });
            }
        }
        self.last = Some((n.clone(), v.clone()));
        Ok(v)
    }

    fn eval_magnitude(&mut self, n: &Magnitude, sat: &Sat) -> Result<Magnitude> {
        match n {
            Magnitude::Exact(x) => Ok(sat.clamp(self.eval(x)?, true)),
            Magnitude::AtLeast(x) => match self.rule {
                Rule::Identity => Ok(Magnitude::AtLeast(x.clone())),
                Rule::Square => Ok(sat.clamp(x * x, false)),
                Rule::Table(_) => Err(Error::OracleUndefined {
                    oracle: self.name.clone(),
                    argument: n.to_string(),
                }),
            },
        }
    }
}

/// One step of the recursion. All fields except `k` and `value` are absent for `k = 1`.
#[derive(Clone, Debug)]
pub struct GammaTrace {
    pub k: u64,
    pub value: Magnitude,
    /// `γ(k-1)`.
    pub previous: Option<Magnitude>,
    /// `m = γ(k-1)!·k`.
    pub argument: Option<Magnitude>,
    /// `α(m)`.
    pub alpha: Option<Magnitude>,
    /// `β(m+1)`.
    pub beta: Option<Magnitude>,
    /// `β(m+1)^m`.
    pub beta_power: Option<Magnitude>,
    /// `max{α(m), β(m+1)^m}`.
    pub multiplier: Option<Magnitude>,
}

/// Traces of `γ(1), …, γ(k)` with saturation at `10^max_digits`.
pub fn gamma_traces(k: u64, alpha: &mut BoundOracle, beta: &mut BoundOracle, max_digits: u32) -> Result<Vec<GammaTrace>> {
    if k == 0 {
        return Err(Error::Input("γ is defined for k ≥ 1".into()));
    }
    let sat = Sat::new(max_digits);
    let one = Magnitude::Exact(BigUint::one());
    let mut traces = vec![GammaTrace {
        k: 1,
        value: one,
        previous: None,
        argument: None,
        alpha: None,
        beta: None,
        beta_power: None,
        multiplier: None,
    }];
    for step in 2..=k {
        let prev = traces.last().unwrap().value.clone();
        let m = sat.mul(&sat.factorial(&prev), &Magnitude::Exact(BigUint::from(step)));
        let a = alpha.eval_magnitude(&m, &sat)?;
        let b = beta.eval_magnitude(&sat.succ(&m), &sat)?;
        let bp = sat.pow(&b, &m);
        let mult = sat.max(&a, &bp);
        let value = sat.mul(&prev, &mult);
        traces.push(GammaTrace {
            k: step,
            value,
            previous: Some(prev),
            argument: Some(m),
            alpha: Some(a),
            beta: Some(b),
            beta_power: Some(bp),
            multiplier: Some(mult),
        });
    }
    Ok(traces)
}

/// Exact `γ(k)`; fails if any intermediate value reaches `10^max_digits`.
pub fn gamma(k: u64, alpha: &mut BoundOracle, beta: &mut BoundOracle, max_digits: u32) -> Result<BigUint> {
    let traces = gamma_traces(k, alpha, beta, max_digits)?;
    let last = traces.last().unwrap();
    last.value.exact().cloned().ok_or_else(|| Error::TooLarge(format!("γ({k})")))
}

/// Whether `γ(j) ≥ γ(j-1)` is established for every consecutive pair:
/// by direct comparison when both are exact, otherwise because the
/// multiplier is at least 1.
pub fn is_monotone(traces: &[GammaTrace]) -> bool {
    traces.windows(2).all(|w| match (w[0].value.exact(), w[1].value.exact()) {
        (Some(a), Some(b)) => b >= a,
        _ => w[1].multiplier.as_ref().is_some_and(|m| m.lower() >= &BigUint::one()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// `k(B) ≥ 4` and no clause is contradicted.
    OutOfRange,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::OutOfRange => "out-of-range",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremBCheck {
    pub k: usize,
    pub defect_order: u64,
    pub label: String,
    /// Whether each of `k=1 ⟺ D=1`, `k=2 ⟺ D≅C2`, `k=3 ⟺ D∈{C3,S3}` holds.
    pub clauses: [bool; 3],
    pub verdict: Verdict,
}

/// Evaluates all three biconditionals in both directions.
pub fn check_theorem_b(k: usize, defect: &DefectDatum) -> TheoremBCheck {
    let label = defect.label.name.as_str();
    let rhs = [defect.order == 1, label == "C2", label == "C3" || label == "S3"];
    let clauses = [0, 1, 2].map(|i| (k == i + 1) == rhs[i]);
    let verdict = if clauses.iter().any(|c| !c) {
        Verdict::Fail
    } else if k <= 3 {
        Verdict::Pass
    } else {
        Verdict::OutOfRange
    };
    TheoremBCheck { k, defect_order: defect.order, label: label.to_string(), clauses, verdict }
}
