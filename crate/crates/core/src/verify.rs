//! Invariant suite: every structural identity and bound, checked against the
//! oracle for one caterpillar at a time.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{bounds_report, cardano_roots, trace_inv, trace_inv_deleted, SANDWICH_SLACK};
use crate::charpoly::{
    build_c, charpoly_p, deleted_c, laplacian_charpoly, laplacian_spectrum, p_minus2,
    pprime_minus2,
};
use crate::error::Error;
use crate::graph::{build_caterpillar, linegraph_as_hjoin};
use crate::matrix::{DenseMatrix, IntMatrix};
use crate::model::{derive_params, CaterpillarSpec};
use crate::oracle::{
    charpoly_from_roots, deradicalize, exact_charpoly, exact_det_shifted, min_root,
    pruned_charpoly, sym_eigs,
};
use crate::spectrum::SpectrumMultiset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable to this spec (e.g. needs `k >= 2`).
    Skip,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

/// Names of all checks, in report order.
pub const CHECKS: &[&str] = &[
    "derived-params",
    "incidence-signless",
    "incidence-line-graph",
    "spectrum-shift",
    "bipartite-spectra",
    "hjoin-line-graph",
    "charpoly-determinant",
    "values-at-minus-two",
    "laplacian-charpoly-exact",
    "laplacian-charpoly-float",
    "laplacian-spectrum",
    "minus-one-multiplicity",
    "trace-inverse",
    "trace-inverse-deleted",
    "interlacing",
    "bound-sandwich",
    "mu-from-c",
    "cardano-pairs",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Tolerance for floating comparisons against the oracle.
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { tol: 1e-8 }
    }
}

struct Recorder {
    out: Vec<CheckOutcome>,
}

impl Recorder {
    fn push(&mut self, name: &'static str, status: Status, detail: impl Into<String>) {
        self.out.push(CheckOutcome {
            name,
            status,
            detail: detail.into(),
        });
    }

    fn check(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.push(name, Status::Pass, "");
        } else {
            self.push(name, Status::Fail, detail());
        }
    }

    fn skip(&mut self, name: &'static str, why: &str) {
        self.push(name, Status::Skip, why);
    }

    fn error(&mut self, name: &'static str, err: &Error) {
        self.push(name, Status::Fail, err.to_string());
    }
}

fn eigs(m: &DenseMatrix) -> Result<Vec<f64>, Error> {
    if m.rows() == 0 {
        return Ok(Vec::new());
    }
    Ok(sym_eigs(m)?.values)
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Runs every check on one spec. Numerical non-convergence shows up as a
/// failed check whose detail names the error.
pub fn verify_spec(spec: &CaterpillarSpec, cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let mut r = Recorder { out: Vec::new() };
    let tol = cfg.tol;
    let d = derive_params(spec);
    let k = spec.k();

    r.check(
        "derived-params",
        d.n == spec.order() && 1 + d.a + d.dim_c - d.b == d.n && d.dim_c == 2 * k - 1,
        || format!("{d:?}"),
    );

    let tree = build_caterpillar(spec);
    let mats = tree.matrices();
    let inc = tree.incidence();
    r.check("incidence-signless", inc.matmul(&inc.transpose()) == mats.q, || {
        "I I^t != Q".into()
    });

    let line = tree.line_graph();
    match &line {
        Ok(lg) => {
            let lhs = inc.transpose().matmul(&inc);
            let rhs = DenseMatrix::identity(lg.order()).combine(2.0, &lg.adjacency(), 1.0);
            r.check("incidence-line-graph", lhs == rhs, || "I^t I != 2I + A(L)".into());
        }
        Err(_) => r.skip("incidence-line-graph", "no edges"),
    }

    let sigma_l = match eigs(&mats.l) {
        Ok(v) => v,
        Err(e) => {
            r.error("spectrum-shift", &e);
            return r.out;
        }
    };
    let sigma_q = eigs(&mats.q).unwrap_or_default();
    let sigma_line = match &line {
        Ok(lg) => eigs(&lg.adjacency()).unwrap_or_default(),
        Err(_) => Vec::new(),
    };

    if line.is_ok() {
        let mut shifted: Vec<f64> = sigma_line.iter().map(|v| v + 2.0).collect();
        shifted.push(0.0);
        let shifted = SpectrumMultiset::from_values(shifted);
        let gap = max_gap(shifted.values(), &sigma_q);
        r.check("spectrum-shift", gap <= tol, || format!("max gap {gap:e}"));
    } else {
        r.skip("spectrum-shift", "no edges");
    }

    let gap = max_gap(&sigma_l, &sigma_q);
    r.check("bipartite-spectra", gap <= tol, || format!("max gap {gap:e}"));

    match (linegraph_as_hjoin(spec), &line) {
        (Ok(dec), Ok(lg)) => match dec.compose() {
            Ok(g) => {
                let ev = eigs(&g.adjacency()).unwrap_or_default();
                let gap = max_gap(&ev, &sigma_line);
                r.check(
                    "hjoin-line-graph",
                    gap <= tol && g.sorted_degrees() == lg.sorted_degrees(),
                    || format!("spectral gap {gap:e}"),
                );
            }
            Err(e) => r.error("hjoin-line-graph", &e),
        },
        _ => r.skip("hjoin-line-graph", "needs k >= 2"),
    }

    let p = charpoly_p(spec);
    let c = build_c(spec);
    let b = deradicalize(&c);
    let points: Vec<i64> = (0..2 * k as i64).map(|i| i - 3).collect();
    let mismatch = points
        .iter()
        .find(|&&t| p.eval_i64(t) != exact_det_shifted(&b, t));
    r.check(
        "charpoly-determinant",
        mismatch.is_none() && p.degree() == Some(2 * k - 1) && p.leading() == BigInt::from(-1),
        || format!("disagrees at t = {mismatch:?}"),
    );

    let pm2 = p_minus2(spec);
    let ppm2 = pprime_minus2(spec);
    r.check(
        "values-at-minus-two",
        pm2 == p.eval_i64(-2)
            && ppm2 == p.derivative().eval_i64(-2)
            && pm2.is_positive()
            && ppm2.is_negative(),
        || format!("p(-2) = {pm2}, p'(-2) = {ppm2}"),
    );

    match laplacian_charpoly(spec) {
        Ok(chi) => {
            let lap = IntMatrix::from_dense(&mats.l).expect("integer Laplacian");
            let exact = exact_charpoly(&lap);
            r.check(
                "laplacian-charpoly-exact",
                chi == exact && chi.is_monic() && chi.coeff(0) == BigInt::from(0),
                || format!("{chi} vs {exact}"),
            );
            let float = charpoly_from_roots(&sigma_l);
            let worst = float
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    let c = chi.coeff(i).to_f64().unwrap_or(f64::INFINITY);
                    (x - c).abs() / c.abs().max(1.0)
                })
                .fold(0.0, f64::max);
            r.check(
                "laplacian-charpoly-float",
                float.len() == chi.coeffs().len() && worst < 1e-6,
                || format!("relative residual {worst:e}"),
            );
        }
        Err(e) => {
            r.error("laplacian-charpoly-exact", &e);
            r.error("laplacian-charpoly-float", &e);
        }
    }

    match laplacian_spectrum(spec) {
        Ok(s) => {
            let gap = max_gap(s.values(), &sigma_l);
            r.check("laplacian-spectrum", gap <= tol, || format!("max gap {gap:e}"));
        }
        Err(e) => r.error("laplacian-spectrum", &e),
    }

    if line.is_ok() {
        let count = sigma_line.iter().filter(|v| (*v + 1.0).abs() <= 1e-7).count();
        r.check("minus-one-multiplicity", count >= d.a, || {
            format!("{count} < a = {}", d.a)
        });
    } else {
        r.skip("minus-one-multiplicity", "no edges");
    }

    let sigma_c = eigs(&c.to_dense()).unwrap_or_default();
    let oracle_trace: f64 = sigma_c.iter().map(|v| 1.0 / (v + 2.0)).sum();
    let exact_trace = trace_inv(spec).to_f64();
    r.check(
        "trace-inverse",
        (oracle_trace - exact_trace).abs() <= tol * exact_trace.max(1.0),
        || format!("{exact_trace} vs oracle {oracle_trace}"),
    );

    if k >= 2 {
        let mut trace_fail = None;
        let mut interlace_fail = None;
        for i in 1..k {
            let del = deleted_c(spec, i).expect("index in range");
            let sigma_del = eigs(&del.to_dense()).unwrap_or_default();
            let t_oracle: f64 = sigma_del.iter().map(|v| 1.0 / (v + 2.0)).sum();
            let t_exact = trace_inv_deleted(spec, i).expect("index in range").to_f64();
            if (t_oracle - t_exact).abs() > tol * t_exact.max(1.0) && trace_fail.is_none() {
                trace_fail = Some(format!("i = {i}: {t_exact} vs oracle {t_oracle}"));
            }
            // ascending: lambda_m(C) <= lambda_m(C~) <= lambda_{m+1}(C)
            let ok = sigma_del.iter().enumerate().all(|(m, &v)| {
                sigma_c[m] <= v + tol && v <= sigma_c[m + 1] + tol
            });
            if !ok && interlace_fail.is_none() {
                interlace_fail = Some(format!("i = {i}"));
            }
        }
        r.check("trace-inverse-deleted", trace_fail.is_none(), || trace_fail.clone().unwrap());
        r.check("interlacing", interlace_fail.is_none(), || interlace_fail.clone().unwrap());

        match bounds_report(spec) {
            Ok(rep) => {
                r.check("bound-sandwich", rep.violations.is_empty(), || rep.violations.join("; "));
                let pruned = c.prune_zero();
                let lmin = eigs(&pruned.to_dense())
                    .ok()
                    .and_then(|v| v.first().copied())
                    .unwrap_or(f64::NAN);
                let root = pruned_charpoly(&p, d.b)
                    .and_then(|pp| min_root(&pp.shift(-2), 1e-9, 2.0 + SANDWICH_SLACK));
                let ok = (lmin + 2.0 - rep.mu).abs() <= tol
                    && root.as_ref().is_ok_and(|x| (x - rep.mu).abs() <= tol);
                r.check("mu-from-c", ok, || {
                    format!("mu {} vs lambda_min + 2 = {} vs root {root:?}", rep.mu, lmin + 2.0)
                });
            }
            Err(e) => {
                r.error("bound-sandwich", &e);
                r.error("mu-from-c", &e);
            }
        }

        let q = spec.legs();
        let mut cardano_fail = None;
        for j in 0..k - 1 {
            let pair = CaterpillarSpec::from_legs(vec![q[j], q[j + 1]]).expect("nonempty");
            let dense = eigs(&build_c(&pair).to_dense()).unwrap_or_default();
            let mut roots = cardano_roots(q[j], q[j + 1]).map(|s| s.zetas.to_vec()).unwrap_or_default();
            roots.sort_by(f64::total_cmp);
            let gap = max_gap(&roots, &dense);
            if gap > 1e-9 && cardano_fail.is_none() {
                cardano_fail = Some(format!("pair ({}, {}): gap {gap:e}", q[j], q[j + 1]));
            }
        }
        r.check("cardano-pairs", cardano_fail.is_none(), || cardano_fail.clone().unwrap());
    } else {
        for name in [
            "trace-inverse-deleted",
            "interlacing",
            "bound-sandwich",
            "mu-from-c",
            "cardano-pairs",
        ] {
            r.skip(name, "needs k >= 2");
        }
    }
    r.out
}

/// Random specs with `k` uniform in `1..=kmax` and legs uniform in `0..=qmax`.
pub fn random_specs(count: usize, kmax: usize, qmax: u64, seed: u64) -> Vec<CaterpillarSpec> {
    random_specs_with_min_k(count, 1, kmax, qmax, seed)
}

pub fn random_specs_with_min_k(
    count: usize,
    kmin: usize,
    kmax: usize,
    qmax: u64,
    seed: u64,
) -> Vec<CaterpillarSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(kmin.max(1)..=kmax.max(kmin.max(1)));
            let legs = (0..k).map(|_| rng.gen_range(0..=qmax)).collect();
            CaterpillarSpec::from_legs(legs).expect("k >= 1")
        })
        .collect()
}

/// Per-check tally over many specs.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// First failing spec and its detail.
    pub first_failure: Option<(CaterpillarSpec, String)>,
}

impl CheckSummary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub specs: usize,
    pub checks: Vec<CheckSummary>,
    /// True when some failure came from eigensolver non-convergence.
    pub non_convergence: bool,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckSummary::ok)
    }
}

/// Checks every spec (in parallel) and tallies the outcomes in input order.
pub fn verify_many(specs: &[CaterpillarSpec], cfg: &VerifyConfig) -> VerifyReport {
    let results: Vec<Vec<CheckOutcome>> = specs.par_iter().map(|s| verify_spec(s, cfg)).collect();
    let mut checks: Vec<CheckSummary> = CHECKS
        .iter()
        .map(|&name| CheckSummary {
            name,
            passed: 0,
            failed: 0,
            skipped: 0,
            first_failure: None,
        })
        .collect();
    let mut non_convergence = false;
    for (spec, outcomes) in specs.iter().zip(results) {
        for o in outcomes {
            let slot = checks
                .iter_mut()
                .find(|c| c.name == o.name)
                .expect("registered check");
            match o.status {
                Status::Pass => slot.passed += 1,
                Status::Skip => slot.skipped += 1,
                Status::Fail => {
                    slot.failed += 1;
                    non_convergence |= o.detail.contains("did not converge");
                    if slot.first_failure.is_none() {
                        slot.first_failure = Some((spec.clone(), o.detail));
                    }
                }
            }
        }
    }
    VerifyReport {
        specs: specs.len(),
        checks,
        non_convergence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_passes_everything() {
        let s = CaterpillarSpec::new(&[4, 9, 0, 1]).unwrap();
        let out = verify_spec(&s, &VerifyConfig::default());
        assert_eq!(out.len(), CHECKS.len());
        for o in &out {
            assert_eq!(o.status, Status::Pass, "{}: {}", o.name, o.detail);
        }
    }

    #[test]
    fn degenerate_specs() {
        for q in [&[0][..], &[3], &[0, 0], &[0, 0, 0]] {
            let s = CaterpillarSpec::new(q).unwrap();
            for o in verify_spec(&s, &VerifyConfig::default()) {
                assert_ne!(o.status, Status::Fail, "{s} {}: {}", o.name, o.detail);
            }
        }
    }

    #[test]
    fn random_specs_are_deterministic() {
        let a = random_specs(20, 8, 6, 7);
        assert_eq!(a, random_specs(20, 8, 6, 7));
        assert_ne!(a, random_specs(20, 8, 6, 8));
        assert!(a.iter().all(|s| (1..=8).contains(&s.k()) && s.legs().iter().all(|&q| q <= 6)));
    }

    #[test]
    fn tally() {
        let specs = random_specs(10, 5, 4, 1);
        let rep = verify_many(&specs, &VerifyConfig::default());
        assert_eq!(rep.specs, 10);
        assert!(rep.all_passed(), "{:?}", rep.checks.iter().find(|c| !c.ok()));
        for c in &rep.checks {
            assert_eq!(c.passed + c.failed + c.skipped, 10, "{}", c.name);
        }
    }
}
