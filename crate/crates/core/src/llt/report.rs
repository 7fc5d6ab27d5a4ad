use std::fmt::Write;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Passed,
    Failed,
}

impl Status {
    pub fn passed(self) -> bool {
        self == Status::Passed
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Passed => "PASSED",
            Status::Failed => "FAILED",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root mean square of the log residuals.
    pub residual: f64,
    pub points_used: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub eligible: bool,
    pub l1_distance: f64,
    pub tv_distance: f64,
    pub theorem_bound: f64,
    pub corollary_bound: f64,
    pub bentkus_bound: f64,
    pub quad_error: f64,
    pub tail_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub alpha: f64,
    pub gamma: f64,
    pub dim: usize,
    pub truncation: usize,
    pub f0_norm_sq: f64,
    pub beta: f64,
    pub leading_chaos_order: Option<usize>,
    pub expected_slope: Option<f64>,
    pub fit: Option<RateFit>,
    pub status: Status,
    pub failures: Vec<String>,
    pub rows: Vec<SweepRow>,
}

/// Fixed-width scientific notation with 17 significant digits.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_line(out: &mut String, fields: &[String]) {
    out.push_str(&fields.join(","));
    out.push('\n');
}

impl ExperimentReport {
    pub const CSV_HEADER: [&'static str; 8] = [
        "n",
        "l1_distance",
        "tv_distance",
        "theorem_bound",
        "corollary_bound",
        "bentkus_bound",
        "quad_error",
        "tail_bound",
    ];

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        csv_line(&mut out, &Self::CSV_HEADER.map(String::from));
        for r in &self.rows {
            let mut fields = vec![r.n.to_string()];
            fields.extend(
                [
                    r.l1_distance,
                    r.tv_distance,
                    r.theorem_bound,
                    r.corollary_bound,
                    r.bentkus_bound,
                    r.quad_error,
                    r.tail_bound,
                ]
                .map(fmt_float),
            );
            csv_line(&mut out, &fields);
        }
        let (slope, intercept) = self
            .fit
            .map_or((f64::NAN, f64::NAN), |f| (f.slope, f.intercept));
        writeln!(out, "# fitted_slope={}", fmt_float(slope)).unwrap();
        writeln!(out, "# fitted_intercept={}", fmt_float(intercept)).unwrap();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeRow {
    pub n: usize,
    pub l1_distance: f64,
    pub quad_error: f64,
    pub tail_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub alpha: f64,
    pub first_chaos_norm: f64,
    pub second_chaos_norm: f64,
    pub floor: f64,
    pub min_distance: f64,
    pub rows: Vec<ProbeRow>,
    pub status: Status,
}

impl ProbeReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,l1_distance,quad_error,tail_bound\n");
        for r in &self.rows {
            let mut fields = vec![r.n.to_string()];
            fields.extend([r.l1_distance, r.quad_error, r.tail_bound].map(fmt_float));
            csv_line(&mut out, &fields);
        }
        writeln!(out, "# floor={}", fmt_float(self.floor)).unwrap();
        writeln!(out, "# min_distance={}", fmt_float(self.min_distance)).unwrap();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsRow {
    pub n: usize,
    pub d: usize,
    pub eligible: bool,
    pub theorem_bound: f64,
    pub corollary_bound: f64,
    /// Corollary bound for the law padded with standard normal coordinates,
    /// which keeps `‖f₀‖²` fixed as `d` grows.
    pub corollary_bound_fixed_norm: f64,
    pub bentkus_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsTable {
    pub alpha: f64,
    pub rows: Vec<BoundsRow>,
}

impl BoundsTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "n,d,eligible,theorem_bound,corollary_bound,corollary_bound_fixed_norm,bentkus_bound\n",
        );
        for r in &self.rows {
            let mut fields = vec![r.n.to_string(), r.d.to_string(), r.eligible.to_string()];
            fields.extend(
                [
                    r.theorem_bound,
                    r.corollary_bound,
                    r.corollary_bound_fixed_norm,
                    r.bentkus_bound,
                ]
                .map(fmt_float),
            );
            csv_line(&mut out, &fields);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let report = ExperimentReport {
            alpha: 0.5,
            gamma: 1.0,
            dim: 1,
            truncation: 24,
            f0_norm_sq: 1.0,
            beta: 1.0,
            leading_chaos_order: None,
            expected_slope: None,
            fit: None,
            status: Status::Passed,
            failures: vec![],
            rows: vec![SweepRow {
                n: 2,
                eligible: true,
                l1_distance: 0.0,
                tv_distance: 0.0,
                theorem_bound: 0.0,
                corollary_bound: 0.0,
                bentkus_bound: 0.1,
                quad_error: 0.0,
                tail_bound: 0.0,
            }],
        };
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "n,l1_distance,tv_distance,theorem_bound,corollary_bound,bentkus_bound,quad_error,tail_bound"
        );
        assert!(lines[1].starts_with("2,0.0000000000000000e0,"));
        assert!(lines[1].contains(",1.0000000000000001e-1,"));
        assert_eq!(lines[2], "# fitted_slope=NaN");
        assert_eq!(lines.len(), 4);
    }
}
