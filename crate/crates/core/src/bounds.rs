//! Bounds on the algebraic connectivity `mu(q_1, ..., q_k)`.
//!
//! * `ub_cardano`: interlacing against every adjacent pair `C(q_j, q_{j+1})`,
//!   whose least eigenvalue comes from the trigonometric cubic formula.
//! * `lb` / `ub_trace`: trace of `(2I + C)^{-1}` and of its deleted principal
//!   submatrices, all exact rationals built from `p(.; -2)` and `p'(.; -2)`.

use std::f64::consts::PI;

use num_bigint::BigInt;

use crate::charpoly::{build_c, p_minus2, pprime_minus2};
use crate::error::{Error, Result};
use crate::model::CaterpillarSpec;
use crate::oracle::{mu_oracle, sym_eigs};
use crate::rational::Rational;

/// How the three roots of `det(C(q1, q2) - lambda I)` were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubicMethod {
    /// Both legs positive: trigonometric Cardano formula.
    Trigonometric,
    /// Exactly one leg count is zero: roots `{q, 0, -1}` in closed form.
    ZeroLeg,
    /// `q1 = q2 = 0`: `C` is the zero matrix.
    BothZero,
    /// Depressed-cubic coefficient `r` vanished numerically; dense eigensolve used.
    DenseFallback,
}

/// Parameters of the depressed cubic `gamma^3 + r gamma + s = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepressedCubic {
    pub r: f64,
    pub s: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CubicSolution {
    pub method: CubicMethod,
    pub cubic: Option<DepressedCubic>,
    /// `zeta_0, zeta_1, zeta_2` in formula order (or the closed-form roots).
    pub zetas: [f64; 3],
}

impl CubicSolution {
    /// `lambda_1 >= lambda_2 >= lambda_3`.
    pub fn descending(&self) -> [f64; 3] {
        let mut z = self.zetas;
        z.sort_by(|a, b| b.total_cmp(a));
        z
    }

    pub fn least(&self) -> f64 {
        self.descending()[2]
    }
}

/// Depressed-cubic data for `C(q1, q2)` with both legs positive.
fn depressed(q1: f64, q2: f64) -> DepressedCubic {
    let lin = (q1 - 1.0) * (q2 - 1.0) - q1 - q2;
    let quad = 2.0 - q1 - q2;
    let constant = q1 * (q2 - 1.0) + q2 * (q1 - 1.0);
    let r = lin - quad * quad / 3.0;
    let s = 2.0 * (quad / 3.0).powi(3) - quad * lin / 3.0 + constant;
    // nonnegative for a symmetric matrix; clamp rounding noise
    let radicand = (-(r / 3.0).powi(3) - (s / 2.0).powi(2)).max(0.0);
    let theta = radicand.sqrt().atan2(-s / 2.0);
    DepressedCubic { r, s, theta }
}

/// Eigenvalues of the 3x3 matrix `C(q1, q2)`.
pub fn cardano_roots(q1: u64, q2: u64) -> Result<CubicSolution> {
    if q1 == 0 && q2 == 0 {
        return Ok(CubicSolution {
            method: CubicMethod::BothZero,
            cubic: None,
            zetas: [0.0; 3],
        });
    }
    if q1 == 0 || q2 == 0 {
        // the leg-free row of C is zero; the rest is the 2x2 block of the line graph K_{q+1}
        let q = (q1 + q2) as f64;
        return Ok(CubicSolution {
            method: CubicMethod::ZeroLeg,
            cubic: None,
            zetas: [q, 0.0, -1.0],
        });
    }
    let (a, b) = (q1 as f64, q2 as f64);
    let cubic = depressed(a, b);
    if cubic.r.abs() < 1e-12 {
        let spec = CaterpillarSpec::from_legs(vec![q1, q2])?;
        let v = sym_eigs(&build_c(&spec).to_dense())?.values;
        return Ok(CubicSolution {
            method: CubicMethod::DenseFallback,
            cubic: Some(cubic),
            zetas: [v[2], v[1], v[0]],
        });
    }
    let amp = 2.0 * (-cubic.r / 3.0).sqrt();
    let offset = (a + b - 2.0) / 3.0;
    let zeta = |j: f64| amp * ((cubic.theta + 2.0 * PI * j) / 3.0).cos() + offset;
    Ok(CubicSolution {
        method: CubicMethod::Trigonometric,
        cubic: Some(cubic),
        zetas: [zeta(0.0), zeta(1.0), zeta(2.0)],
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CardanoBound {
    pub value: f64,
    /// 1-based position `j` of the pair `(q_j, q_{j+1})` attaining the minimum.
    pub argmin: usize,
    /// `k >= 4` and both end legs nonzero.
    pub in_proven_range: bool,
}

/// `min_j lambda_3(C(q_j, q_{j+1})) + 2`; ties go to the smallest `j`.
pub fn ub_cardano(spec: &CaterpillarSpec) -> Result<CardanoBound> {
    let q = spec.legs();
    let k = q.len();
    if k < 2 {
        return Err(Error::SpecTooSmall { needed: 2, got: k });
    }
    let mut best: Option<(f64, usize)> = None;
    for j in 0..k - 1 {
        let v = cardano_roots(q[j], q[j + 1])?.least() + 2.0;
        if best.is_none_or(|(b, _)| v < b) {
            best = Some((v, j + 1));
        }
    }
    let (value, argmin) = best.expect("k >= 2");
    Ok(CardanoBound {
        value,
        argmin,
        in_proven_range: k >= 4 && q[0] != 0 && q[k - 1] != 0,
    })
}

/// `tr((2I + C)^{-1}) = -p'(q; -2) / p(q; -2)`.
pub fn trace_inv(spec: &CaterpillarSpec) -> Rational {
    Rational::new(-pprime_minus2(spec), p_minus2(spec))
}

/// Trace of `(2I + C~_(i))^{-1}`, the sum of the prefix and suffix traces.
pub fn trace_inv_deleted(spec: &CaterpillarSpec, i: usize) -> Result<Rational> {
    let k = spec.k();
    if i == 0 || i >= k {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: k.saturating_sub(1),
        });
    }
    let left = trace_inv(&spec.slice(0..i)?);
    let right = trace_inv(&spec.slice(i..k)?);
    Ok(&left + &right)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedBound {
    pub value: Rational,
    /// 1-based deletion index.
    pub argmin: usize,
}

/// `min_i 1 / (tr((2I + C)^{-1}) - tr((2I + C~_(i))^{-1}))` over `1 <= i < k`,
/// skipping nonpositive denominators. Ties go to the smallest `i`.
pub fn ub_trace(spec: &CaterpillarSpec) -> Result<IndexedBound> {
    let mut best: Option<IndexedBound> = None;
    for (i, term) in ub_trace_terms(spec)? {
        let Some(value) = term else { continue };
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(IndexedBound { value, argmin: i });
        }
    }
    best.ok_or(Error::NoValidIndex)
}

/// Every deletion term `(i, 1 / (tr - tr_i))`; `None` where the difference
/// is not positive.
pub fn ub_trace_terms(spec: &CaterpillarSpec) -> Result<Vec<(usize, Option<Rational>)>> {
    let k = spec.k();
    if k < 2 {
        return Err(Error::SpecTooSmall { needed: 2, got: k });
    }
    let full = trace_inv(spec);
    (1..k)
        .map(|i| {
            let denom = &full - &trace_inv_deleted(spec, i)?;
            Ok((i, denom.is_positive().then(|| denom.recip())))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceBounds {
    pub lb: Rational,
    /// `Err` when `k < 2` or no index qualifies.
    pub ub: std::result::Result<IndexedBound, Error>,
}

pub fn bounds_trace(spec: &CaterpillarSpec) -> TraceBounds {
    TraceBounds {
        lb: trace_inv(spec).recip(),
        ub: ub_trace(spec),
    }
}

/// Everything reported for one caterpillar.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub spec: CaterpillarSpec,
    pub mu: f64,
    pub lb: Rational,
    pub ub_trace: std::result::Result<IndexedBound, Error>,
    pub ub_cardano: CardanoBound,
    pub trace_inv: Rational,
    pub p_minus2: BigInt,
    pub pprime_minus2: BigInt,
    /// Human-readable notes for every violated sandwich inequality.
    pub violations: Vec<String>,
}

/// Slack allowed when comparing the floating oracle against exact bounds.
pub const SANDWICH_SLACK: f64 = 1e-9;

pub fn bounds_report(spec: &CaterpillarSpec) -> Result<BoundsReport> {
    let k = spec.k();
    if k < 2 {
        return Err(Error::SpecTooSmall { needed: 2, got: k });
    }
    let mu = mu_oracle(spec)?;
    let tb = bounds_trace(spec);
    let ub_cardano = ub_cardano(spec)?;
    let mut violations = Vec::new();
    let lb = tb.lb.to_f64();
    if lb > mu + SANDWICH_SLACK {
        violations.push(format!("lb {lb} exceeds mu {mu}"));
    }
    if let Ok(ub) = &tb.ub {
        let ub = ub.value.to_f64();
        if mu > ub + SANDWICH_SLACK {
            violations.push(format!("mu {mu} exceeds ub_trace {ub}"));
        }
    }
    if mu > ub_cardano.value + SANDWICH_SLACK {
        violations.push(format!("mu {mu} exceeds ub_cardano {}", ub_cardano.value));
    }
    if spec.order() >= 3 && !(mu > 0.0 && mu <= 1.0 + SANDWICH_SLACK) {
        violations.push(format!("mu {mu} outside (0, 1]"));
    }
    Ok(BoundsReport {
        spec: spec.clone(),
        mu,
        lb: tb.lb,
        ub_trace: tb.ub,
        ub_cardano,
        trace_inv: trace_inv(spec),
        p_minus2: p_minus2(spec),
        pprime_minus2: pprime_minus2(spec),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(q: &[i64]) -> CaterpillarSpec {
        CaterpillarSpec::new(q).unwrap()
    }

    #[test]
    fn cardano_examples() {
        let s = cardano_roots(9, 0).unwrap();
        assert_eq!(s.method, CubicMethod::ZeroLeg);
        assert_eq!(s.descending(), [9.0, 0.0, -1.0]);
        assert_eq!(s.least(), -1.0);

        let s = cardano_roots(4, 9).unwrap();
        assert_eq!(s.method, CubicMethod::Trigonometric);
        let d = s.descending();
        for (v, e) in d.iter().zip([9.071, 3.692, -1.762]) {
            assert!((v - e).abs() < 1e-3, "{v} vs {e}");
        }
        for v in d {
            assert!((-v * v * v + 11.0 * v * v - 11.0 * v - 59.0).abs() < 1e-9);
        }

        let d = cardano_roots(1, 1).unwrap().descending();
        let r2 = 2f64.sqrt();
        for (v, e) in d.iter().zip([r2, 0.0, -r2]) {
            assert!((v - e).abs() < 1e-12);
        }

        let s = cardano_roots(0, 0).unwrap();
        assert_eq!(s.method, CubicMethod::BothZero);
        assert_eq!(s.zetas, [0.0; 3]);
    }

    #[test]
    fn cardano_bound_examples() {
        let b = ub_cardano(&spec(&[5, 0, 5, 0, 5, 0, 5, 0, 5])).unwrap();
        assert!((b.value - 1.0).abs() < 1e-12);
        assert!(b.in_proven_range);

        let b = ub_cardano(&spec(&[4, 9, 0, 1])).unwrap();
        assert_eq!(b.argmin, 1);
        assert!((b.value - 0.238).abs() < 1e-3);

        let b = ub_cardano(&spec(&[1, 1])).unwrap();
        assert!((b.value - (2.0 - 2f64.sqrt())).abs() < 1e-12);
        assert!(!b.in_proven_range);

        assert!(matches!(ub_cardano(&spec(&[3])), Err(Error::SpecTooSmall { .. })));
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace_inv(&spec(&[4, 9, 0, 1])), Rational::new(382, 36));
        assert_eq!(trace_inv(&spec(&[4, 9])), Rational::new(67, 15));
        assert_eq!(trace_inv(&spec(&[0, 1])), Rational::new(11, 6));

        assert_eq!(
            trace_inv_deleted(&spec(&[4, 9, 0, 1]), 2).unwrap(),
            Rational::new(63, 10)
        );
        assert_eq!(
            trace_inv_deleted(&spec(&[1, 1]), 1).unwrap(),
            Rational::from_integer(1)
        );
        assert_eq!(
            trace_inv_deleted(&spec(&[4, 9, 0, 1]), 5),
            Err(Error::IndexOutOfRange { index: 5, max: 3 })
        );
    }

    #[test]
    fn trace_bound_examples() {
        let s = spec(&[4, 9, 0, 1]);
        let tb = bounds_trace(&s);
        assert_eq!(tb.lb, Rational::new(36, 382));
        assert!((tb.lb.to_f64() - 0.0942).abs() < 5e-5);
        let i2 = (&trace_inv(&s) - &trace_inv_deleted(&s, 2).unwrap()).recip();
        assert!((i2.to_f64() - 0.2320).abs() < 5e-4);
        let ub = tb.ub.unwrap();
        assert!(ub.value <= i2);

        let tb = bounds_trace(&spec(&[3, 2, 1, 0, 5, 4]));
        assert!((tb.lb.to_f64() - 0.0372).abs() < 2e-3);
        assert!((tb.ub.unwrap().value.to_f64() - 0.0658).abs() < 2e-3);

        let tb = bounds_trace(&spec(&[7]));
        assert_eq!(tb.ub, Err(Error::SpecTooSmall { needed: 2, got: 1 }));
    }

    #[test]
    fn report_examples() {
        let r = bounds_report(&spec(&[4, 9, 0, 1])).unwrap();
        assert!((r.mu - 0.1862).abs() < 5e-4);
        assert!((r.lb.to_f64() - 0.0942).abs() < 5e-5);
        assert!(r.violations.is_empty());
        assert_eq!(r.p_minus2, BigInt::from(36));

        let r = bounds_report(&spec(&[9, 5, 5, 4, 2, 0, 3])).unwrap();
        assert!((r.mu - 0.0407).abs() < 2e-3);
        assert!((r.ub_trace.as_ref().unwrap().value.to_f64() - 0.0500).abs() < 2e-3);
        assert!((r.lb.to_f64() - 0.022_883).abs() < 1e-5);

        let r = bounds_report(&spec(&[1, 1])).unwrap();
        assert!((r.mu - (2.0 - 2f64.sqrt())).abs() < 1e-12);
        assert!(r.violations.is_empty());

        // K_2: mu = 2 sits outside (0, 1] but the graph has a single edge
        let r = bounds_report(&spec(&[0, 0])).unwrap();
        assert!((r.mu - 2.0).abs() < 1e-12);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }
}
