//! Published reference values for a handful of caterpillars, and comparison
//! of recomputed reports against them.

use crate::bounds::BoundsReport;
use crate::model::CaterpillarSpec;

/// Row of the published bounds table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedRow {
    pub legs: &'static [u64],
    pub mu: f64,
    pub ub_cardano: f64,
    pub ub_trace: f64,
    pub lb: f64,
}

pub const PUBLISHED_TABLE: [PublishedRow; 6] = [
    PublishedRow { legs: &[3, 2, 1, 0, 5, 4], mu: 0.0601, ub_cardano: 0.2788, ub_trace: 0.0658, lb: 0.0372 },
    PublishedRow { legs: &[2, 0, 3, 4, 7], mu: 0.0893, ub_cardano: 0.2536, ub_trace: 0.1056, lb: 0.0514 },
    PublishedRow { legs: &[3, 5, 0, 0, 9, 10], mu: 0.0398, ub_cardano: 0.3087, ub_trace: 0.0423, lb: 0.0270 },
    PublishedRow { legs: &[9, 5, 5, 4, 2, 0, 3], mu: 0.0407, ub_cardano: 0.2157, ub_trace: 0.0500, lb: 0.0290 },
    PublishedRow { legs: &[5, 0, 5, 0, 5, 0, 5, 0, 5], mu: 0.0285, ub_cardano: 1.0000, ub_trace: 0.0346, lb: 0.0167 },
    PublishedRow { legs: &[3, 9, 10, 0, 5, 0, 4, 2, 0, 7], mu: 0.0173, ub_cardano: 0.1624, ub_trace: 0.0201, lb: 0.0108 },
];

/// Published bounds for the worked example `T(4,9,0,1)`. Its upper bound
/// is only the `i = 2` deletion term, see [`WORKED_EXAMPLE_UB_TERM`].
pub const WORKED_EXAMPLE: PublishedRow = PublishedRow {
    legs: &[4, 9, 0, 1],
    mu: 0.1862,
    ub_cardano: f64::NAN,
    ub_trace: f64::NAN,
    lb: 0.0942,
};

/// `(deleted index, value)` of the single upper-bound term worked out for `T(4,9,0,1)`.
pub const WORKED_EXAMPLE_UB_TERM: (usize, f64) = (2, 0.2320);

/// Published exact values of `p(q; -2)` and `p'(q; -2)`.
pub const PUBLISHED_P_MINUS2: &[(&[u64], i64)] = &[(&[1], 2), (&[0, 1], 6), (&[9, 0, 1], 6), (&[4, 9, 0, 1], 36)];
pub const PUBLISHED_PPRIME_MINUS2: &[(&[u64], i64)] = &[(&[1], -1), (&[4, 9, 0, 1], -382)];

/// Differences above this are reported.
pub const REPORT_TOL: f64 = 1e-3;
/// Differences above this in an oracle-confirmed column are errors.
pub const HARD_TOL: f64 = 2e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Mu,
    UbCardano,
    UbTrace,
    Lb,
    PMinus2,
    PPrimeMinus2,
}

impl Column {
    pub fn name(self) -> &'static str {
        match self {
            Column::Mu => "mu",
            Column::UbCardano => "ub_cardano",
            Column::UbTrace => "ub_trace",
            Column::Lb => "lb_trace",
            Column::PMinus2 => "p_minus2",
            Column::PPrimeMinus2 => "pprime_minus2",
        }
    }

    /// Columns an independent oracle confirms; divergence there is an error.
    pub fn is_hard(self) -> bool {
        matches!(self, Column::Mu | Column::UbTrace | Column::Lb)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy {
    pub column: Column,
    pub published: f64,
    pub computed: f64,
}

impl Discrepancy {
    pub fn is_error(&self) -> bool {
        self.column.is_hard() && (self.published - self.computed).abs() > HARD_TOL
    }

    pub fn message(&self) -> String {
        let (published, computed) = match self.column {
            Column::PMinus2 | Column::PPrimeMinus2 => {
                (format!("{:.0}", self.published), format!("{:.0}", self.computed))
            }
            _ => (format!("{:.4}", self.published), format!("{:.6}", self.computed)),
        };
        format!(
            "{} differs from published {published} (computed {computed}, diff {:.2e}){}",
            self.column.name(),
            (self.published - self.computed).abs(),
            if self.is_error() { " [error]" } else { "" }
        )
    }
}

fn lookup(table: &[(&[u64], i64)], spec: &CaterpillarSpec) -> Option<i64> {
    table.iter().find(|(l, _)| *l == spec.legs()).map(|&(_, v)| v)
}

pub fn published_row(spec: &CaterpillarSpec) -> Option<&'static PublishedRow> {
    PUBLISHED_TABLE
        .iter()
        .chain(std::iter::once(&WORKED_EXAMPLE))
        .find(|r| r.legs == spec.legs())
}

/// Every known published value for `report.spec` that differs from the
/// recomputed one by more than [`REPORT_TOL`].
pub fn discrepancies(report: &BoundsReport) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    let mut cmp = |column, published: f64, computed: f64| {
        // NaN marks a value that was never published
        if !published.is_nan() && (published - computed).abs() > REPORT_TOL {
            out.push(Discrepancy { column, published, computed });
        }
    };
    if let Some(row) = published_row(&report.spec) {
        cmp(Column::Mu, row.mu, report.mu);
        cmp(Column::UbCardano, row.ub_cardano, report.ub_cardano.value);
        if let Ok(ub) = &report.ub_trace {
            cmp(Column::UbTrace, row.ub_trace, ub.value.to_f64());
        }
        cmp(Column::Lb, row.lb, report.lb.to_f64());
    }
    let to_f = |v: &num_bigint::BigInt| num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::NAN);
    if let Some(v) = lookup(PUBLISHED_P_MINUS2, &report.spec) {
        cmp(Column::PMinus2, v as f64, to_f(&report.p_minus2));
    }
    if let Some(v) = lookup(PUBLISHED_PPRIME_MINUS2, &report.spec) {
        cmp(Column::PPrimeMinus2, v as f64, to_f(&report.pprime_minus2));
    }
    out
}
