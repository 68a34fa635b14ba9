use std::fmt::Write;

use crate::record::{BoundsRecord, CharpolyRecord, SpectrumRecord, VerifyRecord};

/// Four decimals, dot separator, no negative zero.
pub fn fmt4(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

pub fn fmt_q(q: &[u64]) -> String {
    let parts: Vec<String> = q.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), fmt4)
}

pub fn spectrum_text(r: &SpectrumRecord) -> String {
    let mut out = String::new();
    writeln!(out, "T{}  n = {}", fmt_q(&r.q), r.n).unwrap();
    writeln!(out, "Laplacian spectrum:").unwrap();
    for p in &r.laplacian {
        writeln!(out, "  {:>9}  x{}", fmt4(p.value), p.multiplicity).unwrap();
    }
    writeln!(out, "Line graph adjacency spectrum:").unwrap();
    for p in &r.line_graph {
        writeln!(out, "  {:>9}  x{}", fmt4(p.value), p.multiplicity).unwrap();
    }
    writeln!(
        out,
        "sigma(L) = {{0}} + (sigma(A(line graph)) + 2); max deviation from dense L: {:.1e}",
        r.oracle_deviation
    )
    .unwrap();
    warnings(&mut out, &r.warnings);
    out
}

pub fn charpoly_text(r: &CharpolyRecord) -> String {
    let mut out = String::new();
    let var = if r.of == "L" { "mu" } else { "lambda" };
    writeln!(out, "charpoly of {}{} in {var}: {}", r.of, fmt_q(&r.q), r.polynomial).unwrap();
    writeln!(out, "coefficients (ascending): [{}]", r.coefficients.join(", ")).unwrap();
    warnings(&mut out, &r.warnings);
    out
}

pub fn bounds_text(r: &BoundsRecord) -> String {
    let mut out = String::new();
    let p = &r.provenance;
    writeln!(out, "T{}", fmt_q(&r.q)).unwrap();
    writeln!(out, "  mu          {}", fmt4(r.mu)).unwrap();
    writeln!(out, "  lb_trace    {}  = {}", fmt4(r.bounds.lb), r.exact.lb).unwrap();
    match (&r.bounds.ub_trace, &r.exact.ub_trace, p.ub_trace_argmin) {
        (Some(v), Some(e), Some(i)) => {
            writeln!(out, "  ub_trace    {}  = {e}  (i = {i})", fmt4(*v)).unwrap()
        }
        _ => writeln!(out, "  ub_trace    -").unwrap(),
    }
    for t in &p.ub_trace_terms {
        match (&t.value, &t.exact) {
            (Some(v), Some(e)) => writeln!(out, "    i = {:<3}   {}  = {e}", t.i, fmt4(*v)).unwrap(),
            _ => writeln!(out, "    i = {:<3}   -", t.i).unwrap(),
        }
    }
    writeln!(
        out,
        "  ub_cardano  {}  (j = {}{})",
        fmt4(r.bounds.ub_cardano),
        p.ub_cardano_argmin,
        if p.ub_cardano_in_proven_range { "" } else { ", outside proven range" }
    )
    .unwrap();
    writeln!(out, "  trace_inv   {}", r.exact.trace_inv).unwrap();
    writeln!(out, "  p(-2)       {}", r.exact.p_minus2).unwrap();
    writeln!(out, "  p'(-2)      {}", r.exact.pprime_minus2).unwrap();
    warnings(&mut out, &r.warnings);
    out
}

pub const CSV_HEADER: &str = "q;mu;ub_cardano;ub_trace;lb_trace;flags";

fn flags(r: &BoundsRecord) -> String {
    r.warnings.join(" | ").replace(';', ",")
}

pub fn table_csv(rows: &[BoundsRecord]) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for r in rows {
        writeln!(
            out,
            "{};{};{};{};{};{}",
            fmt_q(&r.q),
            fmt4(r.mu),
            fmt4(r.bounds.ub_cardano),
            fmt_opt(r.bounds.ub_trace),
            fmt4(r.bounds.lb),
            flags(r)
        )
        .unwrap();
    }
    out
}

pub fn table_text(rows: &[BoundsRecord]) -> String {
    let width = rows.iter().map(|r| fmt_q(&r.q).len()).max().unwrap_or(1).max(1);
    let mut out = String::new();
    writeln!(out, "{:<width$}  {:>8}  {:>10}  {:>8}  {:>8}", "q", "mu", "ub_cardano", "ub_trace", "lb_trace").unwrap();
    for r in rows {
        writeln!(
            out,
            "{:<width$}  {:>8}  {:>10}  {:>8}  {:>8}",
            fmt_q(&r.q),
            fmt4(r.mu),
            fmt4(r.bounds.ub_cardano),
            fmt_opt(r.bounds.ub_trace),
            fmt4(r.bounds.lb)
        )
        .unwrap();
        for w in &r.warnings {
            writeln!(out, "{:<width$}    ! {w}", "").unwrap();
        }
    }
    out
}

pub fn verify_text(r: &VerifyRecord) -> String {
    let mut out = String::new();
    let noun = if r.specs == 1 { "spec" } else { "specs" };
    match r.seed {
        Some(seed) => writeln!(out, "verify: {} {noun} (seed {seed})", r.specs).unwrap(),
        None => writeln!(out, "verify: {} {noun}", r.specs).unwrap(),
    }
    let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &r.checks {
        let tag = if c.failed == 0 { "PASS" } else { "FAIL" };
        write!(
            out,
            "{tag} {:<width$}  {} passed, {} failed, {} skipped",
            c.name, c.passed, c.failed, c.skipped
        )
        .unwrap();
        if let Some(f) = &c.first_failure {
            write!(out, "; first failure {f}").unwrap();
        }
        out.push('\n');
    }
    for d in &r.published {
        let tag = if d.error { "FAIL" } else { "NOTE" };
        writeln!(out, "{tag} published value for {}: {}", fmt_q(&d.q), d.message).unwrap();
    }
    writeln!(out, "result: {}", if r.passed { "PASS" } else { "FAIL" }).unwrap();
    out
}

fn warnings(out: &mut String, w: &[String]) {
    for w in w {
        writeln!(out, "warning: {w}").unwrap();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_decimals() {
        assert_eq!(fmt4(0.18622), "0.1862");
        assert_eq!(fmt4(-0.00001), "0.0000");
        assert_eq!(fmt4(1.0), "1.0000");
        assert_eq!(fmt_q(&[4, 9, 0, 1]), "(4,9,0,1)");
    }
}
