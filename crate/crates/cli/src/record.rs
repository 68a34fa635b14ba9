use caterpillar_spectra::oracle::sym_eigs;
use caterpillar_spectra::reference::discrepancies;
use caterpillar_spectra::verify::VerifyReport;
use caterpillar_spectra::{
    bounds_report, build_c, build_caterpillar, charpoly_p, laplacian_charpoly, laplacian_spectrum,
    linegraph_spectrum, ub_trace_terms, CaterpillarSpec, Error, IntPolynomial, SpectrumMultiset,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pair {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub q: Vec<u64>,
    pub n: usize,
    pub laplacian: Vec<Pair>,
    pub line_graph: Vec<Pair>,
    /// Largest gap between the formula spectrum and the dense Laplacian's.
    pub oracle_deviation: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharpolyRecord {
    pub q: Vec<u64>,
    pub of: String,
    pub coefficients: Vec<String>,
    pub polynomial: String,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub lb: f64,
    pub ub_trace: Option<f64>,
    pub ub_cardano: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Exact {
    pub trace_inv: String,
    pub p_minus2: String,
    pub pprime_minus2: String,
    pub lb: String,
    pub ub_trace: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub i: usize,
    pub value: Option<f64>,
    pub exact: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub ub_trace_argmin: Option<usize>,
    pub ub_trace_terms: Vec<Term>,
    pub ub_cardano_argmin: usize,
    pub ub_cardano_in_proven_range: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub q: Vec<u64>,
    pub mu: f64,
    pub bounds: Bounds,
    pub exact: Exact,
    pub provenance: Provenance,
    pub warnings: Vec<String>,
    /// Set when a recomputed value contradicts an oracle-confirmed published one.
    #[serde(default)]
    pub published_error: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PublishedNote {
    pub q: Vec<u64>,
    pub message: String,
    pub error: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub specs: usize,
    pub seed: Option<u64>,
    pub checks: Vec<CheckRecord>,
    pub published: Vec<PublishedNote>,
    pub passed: bool,
    pub non_convergence: bool,
}

fn pairs(s: &SpectrumMultiset, tol: f64) -> Vec<Pair> {
    s.grouped(tol)
        .into_iter()
        .map(|(value, multiplicity)| Pair { value, multiplicity })
        .collect()
}

pub fn spectrum_record(spec: &CaterpillarSpec, tol: f64) -> Result<SpectrumRecord, Error> {
    let lap = laplacian_spectrum(spec)?;
    let line = linegraph_spectrum(spec)?;
    let g = build_caterpillar(spec);
    let dense = if g.order() == 0 {
        Vec::new()
    } else {
        sym_eigs(&g.laplacian())?.values
    };
    let oracle_deviation = lap.max_abs_diff(&dense).unwrap_or(f64::INFINITY);
    let mut warnings = Vec::new();
    if oracle_deviation > tol {
        warnings.push(format!("formula spectrum deviates from dense Laplacian by {oracle_deviation:e}"));
    }
    Ok(SpectrumRecord {
        q: spec.legs().to_vec(),
        n: spec.order(),
        laplacian: pairs(&lap, tol),
        line_graph: pairs(&line, tol),
        oracle_deviation,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Of {
    C,
    L,
}

pub fn charpoly_record(spec: &CaterpillarSpec, of: Of) -> Result<CharpolyRecord, Error> {
    let (p, name): (IntPolynomial, &str) = match of {
        Of::C => (charpoly_p(spec), "C"),
        Of::L => (laplacian_charpoly(spec)?, "L"),
    };
    let mut warnings = Vec::new();
    let c = build_c(spec);
    if of == Of::C && !c.zero_rows().is_empty() {
        warnings.push(format!(
            "{} zero row(s) from empty legs contribute factor(s) of lambda",
            c.zero_rows().len()
        ));
    }
    Ok(CharpolyRecord {
        q: spec.legs().to_vec(),
        of: name.into(),
        coefficients: p.to_decimal_strings(),
        polynomial: p.to_string(),
        warnings,
    })
}

pub fn bounds_record(spec: &CaterpillarSpec) -> Result<BoundsRecord, Error> {
    let r = bounds_report(spec)?;
    let terms = ub_trace_terms(spec)?
        .into_iter()
        .map(|(i, t)| Term {
            i,
            value: t.as_ref().map(|t| t.to_f64()),
            exact: t.map(|t| t.to_string()),
        })
        .collect();
    let mut warnings = r.violations.clone();
    if let Err(e) = &r.ub_trace {
        warnings.push(format!("ub_trace unavailable: {e}"));
    }
    if !r.ub_cardano.in_proven_range {
        warnings.push("ub_cardano outside proven range (needs k >= 4 and nonzero end legs)".into());
    }
    let found = discrepancies(&r);
    let published_error = found.iter().any(|d| d.is_error());
    warnings.extend(found.iter().map(|d| d.message()));
    let ub = r.ub_trace.as_ref().ok();
    Ok(BoundsRecord {
        q: spec.legs().to_vec(),
        mu: r.mu,
        bounds: Bounds {
            lb: r.lb.to_f64(),
            ub_trace: ub.map(|u| u.value.to_f64()),
            ub_cardano: r.ub_cardano.value,
        },
        exact: Exact {
            trace_inv: r.trace_inv.to_string(),
            p_minus2: r.p_minus2.to_string(),
            pprime_minus2: r.pprime_minus2.to_string(),
            lb: r.lb.to_string(),
            ub_trace: ub.map(|u| u.value.to_string()),
        },
        provenance: Provenance {
            ub_trace_argmin: ub.map(|u| u.argmin),
            ub_trace_terms: terms,
            ub_cardano_argmin: r.ub_cardano.argmin,
            ub_cardano_in_proven_range: r.ub_cardano.in_proven_range,
        },
        warnings,
        published_error,
    })
}

pub fn verify_record(
    report: &VerifyReport,
    specs: &[CaterpillarSpec],
    seed: Option<u64>,
) -> VerifyRecord {
    let checks = report
        .checks
        .iter()
        .map(|c| CheckRecord {
            name: c.name.into(),
            passed: c.passed,
            failed: c.failed,
            skipped: c.skipped,
            first_failure: c.first_failure.as_ref().map(|(s, d)| format!("{s}: {d}")),
        })
        .collect();
    let mut published = Vec::new();
    for s in specs.iter().filter(|s| s.k() >= 2) {
        if let Ok(r) = bounds_report(s) {
            for d in discrepancies(&r) {
                published.push(PublishedNote {
                    q: s.legs().to_vec(),
                    message: d.message(),
                    error: d.is_error(),
                });
            }
        }
    }
    let passed = report.all_passed() && !published.iter().any(|p| p.error);
    VerifyRecord {
        specs: report.specs,
        seed,
        checks,
        published,
        passed,
        non_convergence: report.non_convergence,
    }
}
