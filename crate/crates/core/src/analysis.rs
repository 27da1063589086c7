//! Gate-count measurement against the closed-form reference bounds, and
//! the (n, k) sweep that produces plottable CSV data.
//!
//! Bounds use `log2` throughout and are evaluated in double precision;
//! measured counts are exact integers taken from homogenized networks that
//! are rebuilt with structural hashing disabled, so no sharing flatters
//! the numbers.

use crate::counter::{group_inputs, synthesize_majority_counter, SynthesisError};
use crate::ir::{LogicNetwork, NetworkStats};
use crate::lowering::{homogenize, lower_counters};
use crate::partition_synth::synthesize_majority_partition;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("upper bound requires n > k >= 3 with k odd, got n = {n}, k = {k}")]
    BoundOutOfRange { n: usize, k: usize },
}

/// Which decomposition constructs the network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Counter,
    Partition,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Counter => "counter",
            Method::Partition => "partition",
        }
    }

    /// Dispatch to the majority synthesis routine for this method.
    pub fn synthesize(self, n: usize, k: usize) -> Result<LogicNetwork, SynthesisError> {
        match self {
            Method::Counter => synthesize_majority_counter(n, k),
            Method::Partition => synthesize_majority_partition(n, k),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Method, String> {
        match s {
            "counter" => Ok(Method::Counter),
            "partition" => Ok(Method::Partition),
            other => Err(format!("unknown method '{other}' (counter|partition)")),
        }
    }
}

/// Asymptotic gate-count ceiling of the counter construction:
/// `2*(2n*log2(k) + k*log2(k)^2 + n*k)*(k + log2(k)) / (k+1)^2`.
/// Defined for `n > k >= 3` with `k` odd.
pub fn upper_bound_counter(n: usize, k: usize) -> Result<f64, AnalysisError> {
    if n <= k || k < 3 || k.is_multiple_of(2) {
        return Err(AnalysisError::BoundOutOfRange { n, k });
    }
    let lg = (k as f64).log2();
    let (n, k) = (n as f64, k as f64);
    Ok(2.0 * (2.0 * n * lg + k * lg * lg + n * k) * (k + lg) / ((k + 1.0) * (k + 1.0)))
}

/// Reference curve for the known lower bound order, `(n/k)*log2(k)`, with
/// its unknown constant taken as 1.
pub fn lower_bound_ref(n: usize, k: usize) -> f64 {
    (n as f64 / k as f64) * (k as f64).log2()
}

/// Reference curve for the partition construction's growth order,
/// `(n/k^2)*e^sqrt(n)`.
pub fn partition_bound_ref(n: usize, k: usize) -> f64 {
    (n as f64 / (k * k) as f64) * (n as f64).sqrt().exp()
}

/// The counter-count estimate `bits*(outputs + operands)/inputs` for
/// reducing `operands` addends of `bits` bits with `(inputs:outputs)`
/// counters, plus whether the stated `outputs < inputs < bits` regime
/// holds (the estimate is still evaluated outside it).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CounterCountBound {
    pub value: f64,
    pub in_regime: bool,
}

pub fn counter_count_bound(
    bits: usize,
    operands: usize,
    counter_inputs: usize,
    counter_outputs: usize,
) -> CounterCountBound {
    CounterCountBound {
        value: bits as f64 * (counter_outputs + operands) as f64 / counter_inputs as f64,
        in_regime: counter_outputs < counter_inputs && counter_inputs < bits,
    }
}

/// One measured decomposition with its reference bounds attached.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub method: Method,
    /// `None` when `n <= k` (single-gate regime, bound undefined).
    pub upper_bound_counter: Option<f64>,
    pub lower_bound_ref: f64,
    pub partition_bound_ref: f64,
    /// Groups the pipeline forms: `ceil(n / ceil(k/2))`.
    pub num_groups: usize,
    pub measured: NetworkStats,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.measured;
        writeln!(
            f,
            "{}: n={} k={} method={} groups={}",
            s.name, self.n, self.k, self.method, self.num_groups
        )?;
        writeln!(
            f,
            "  gates: maj={} not={} and={} or={} counter={} total={} depth={}",
            s.maj, s.not, s.and, s.or, s.counter, s.total_gates, s.depth
        )?;
        match self.upper_bound_counter {
            Some(ub) => write!(f, "  bounds: upper={ub:.2}")?,
            None => write!(f, "  bounds: upper=n/a (n <= k)")?,
        }
        write!(
            f,
            " lower_ref={:.2} partition_ref={:.2}",
            self.lower_bound_ref, self.partition_bound_ref
        )
    }
}

/// Build, lower and homogenize one decomposition (hashing disabled for the
/// rebuild) and measure it against the bounds.
pub fn measure_decomposition(
    n: usize,
    k: usize,
    method: Method,
) -> Result<BoundReport, SynthesisError> {
    let net = method.synthesize(n, k)?.with_hashing(false);
    let homogenized = homogenize(&lower_counters(&net, k)?, k)?;
    Ok(BoundReport {
        n,
        k,
        method,
        upper_bound_counter: upper_bound_counter(n, k).ok(),
        lower_bound_ref: lower_bound_ref(n, k),
        partition_bound_ref: partition_bound_ref(n, k),
        num_groups: group_inputs(n, k)?.len(),
        measured: homogenized.stats(),
    })
}

/// One sweep cell; failures are recorded so the sweep can continue.
#[derive(Debug)]
pub struct SweepRow {
    pub n: usize,
    pub k: usize,
    pub result: Result<BoundReport, SynthesisError>,
}

/// Measure every `(n, k)` combination, one series per `k` in the given
/// order (rows within a series follow `ns`). Failed rows are kept in place.
pub fn sweep(ns: &[usize], ks: &[usize], method: Method) -> Vec<SweepRow> {
    let mut rows = Vec::with_capacity(ns.len() * ks.len());
    for &k in ks {
        for &n in ns {
            rows.push(SweepRow {
                n,
                k,
                result: measure_decomposition(n, k, method),
            });
        }
    }
    rows
}

/// Fixed plotting contract for sweep output.
pub const CSV_HEADER: &str = "n,k,method,maj,not,and,or,counter,depth,upper_bound,lower_ref";

/// One CSV row per the fixed column contract; the upper-bound cell is
/// empty in the single-gate regime.
pub fn csv_row(report: &BoundReport) -> String {
    let s = &report.measured;
    let upper = report
        .upper_bound_counter
        .map(|v| v.to_string())
        .unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        report.n,
        report.k,
        report.method,
        s.maj,
        s.not,
        s.and,
        s.or,
        s.counter,
        s.depth,
        upper,
        report.lower_bound_ref
    )
}

/// Header plus one row per successful sweep cell (failed rows are skipped;
/// report them from `SweepRow::result` separately).
pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        if let Ok(report) = &row.result {
            out.push_str(&csv_row(report));
            out.push('\n');
        }
    }
    out
}

/// Least-squares line fit with its coefficient of determination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(points: &[(f64, f64)]) -> LinearFit {
    assert!(points.len() >= 2, "a fit needs at least two points");
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    assert!(sxx > 0.0, "a fit needs at least two distinct x values");
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let sse: f64 = points
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).powi(2))
        .sum();
    let sst: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let r_squared = if sst == 0.0 { 1.0 } else { 1.0 - sse / sst };
    LinearFit {
        slope,
        intercept,
        r_squared,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_bound_matches_direct_substitution() {
        assert!((upper_bound_counter(1001, 9).unwrap() - 3759.4421209419106).abs() < 1e-6);
        assert!((upper_bound_counter(9, 5).unwrap() - 46.271110123987064).abs() < 1e-9);
    }

    #[test]
    fn upper_bound_is_positive_and_monotone_in_n() {
        for k in [3, 5, 9, 17, 101] {
            let mut prev = 0.0;
            for n in ((k + 2)..(k + 400)).step_by(2) {
                let ub = upper_bound_counter(n, k).unwrap();
                assert!(ub > prev, "ub({n},{k})");
                prev = ub;
            }
        }
    }

    #[test]
    fn upper_bound_rejects_out_of_range_parameters() {
        assert_eq!(
            upper_bound_counter(9, 9),
            Err(AnalysisError::BoundOutOfRange { n: 9, k: 9 })
        );
        assert!(upper_bound_counter(7, 9).is_err());
        assert!(upper_bound_counter(9, 4).is_err());
        assert!(upper_bound_counter(5, 1).is_err());
    }

    #[test]
    fn lower_reference_matches_substitution_and_stays_below_upper() {
        assert!((lower_bound_ref(1001, 9) - 352.56610293819494).abs() < 1e-9);
        for k in (3..=17).step_by(2) {
            for n in ((k + 2)..=301).step_by(2) {
                assert!(lower_bound_ref(n, k) < upper_bound_counter(n, k).unwrap());
            }
        }
    }

    #[test]
    fn partition_reference_matches_substitution() {
        assert!((partition_bound_ref(9, 5) - 7.23079329234756).abs() < 1e-9);
    }

    #[test]
    fn counter_count_bound_evaluates_and_flags_the_regime() {
        let b = counter_count_bound(8, 16, 5, 3);
        assert_eq!(b.value, 30.4);
        assert!(b.in_regime);
        assert!(!counter_count_bound(3, 16, 5, 3).in_regime);
        assert!(!counter_count_bound(8, 16, 3, 5).in_regime);
        // Out of regime still evaluates.
        assert_eq!(counter_count_bound(8, 16, 3, 5).value, 56.0);
    }

    #[test]
    fn measurement_reproduces_the_reference_counts() {
        let report = measure_decomposition(9, 5, Method::Counter).unwrap();
        assert_eq!(report.measured.maj, 49);
        assert_eq!(report.measured.not, 13);
        assert_eq!(report.num_groups, 3);
        assert!((report.upper_bound_counter.unwrap() - 46.271110123987064).abs() < 1e-9);

        let partition = measure_decomposition(9, 5, Method::Partition).unwrap();
        assert_eq!(partition.measured.maj, 27);
        assert_eq!(partition.measured.not, 6);
    }

    #[test]
    fn single_gate_rows_report_one_gate_and_no_upper_bound() {
        let report = measure_decomposition(7, 9, Method::Counter).unwrap();
        assert_eq!(report.measured.total_gates, 1);
        assert_eq!(report.measured.maj, 1);
        assert_eq!(report.upper_bound_counter, None);
    }

    #[test]
    fn sweep_keeps_order_and_continues_past_failures() {
        let rows = sweep(&[5, 6, 9], &[3, 5], Method::Counter);
        let cells: Vec<(usize, usize, bool)> =
            rows.iter().map(|r| (r.n, r.k, r.result.is_ok())).collect();
        assert_eq!(
            cells,
            [
                (5, 3, true),
                (6, 3, false),
                (9, 3, true),
                (5, 5, true),
                (6, 5, false),
                (9, 5, true)
            ]
        );
        assert!(matches!(rows[1].result, Err(SynthesisError::EvenInputs(6))));
    }

    #[test]
    fn csv_follows_the_fixed_column_contract() {
        let rows = sweep(&[9, 7], &[5, 9], Method::Counter);
        let csv = render_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("9,5,counter,49,13,0,0,0,"));
        for line in &lines[1..] {
            assert_eq!(line.split(',').count(), 11, "row {line}");
        }
        // Single-gate rows leave the upper-bound cell empty.
        let row_7_9: Vec<&str> = lines[4].split(',').collect();
        assert_eq!(&row_7_9[..4], &["7", "9", "counter", "1"]);
        assert!(row_7_9[9].is_empty());
    }

    #[test]
    fn linear_fit_recovers_exact_and_flat_relations() {
        let exact = linear_fit(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)]);
        assert!((exact.slope - 2.0).abs() < 1e-12);
        assert!((exact.intercept - 1.0).abs() < 1e-12);
        assert!((exact.r_squared - 1.0).abs() < 1e-12);

        let no_signal = linear_fit(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        assert!(no_signal.slope.abs() < 1e-12);
        assert!(no_signal.r_squared.abs() < 1e-12);

        let flat = linear_fit(&[(0.0, 2.0), (1.0, 2.0)]);
        assert!((flat.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn method_names_round_trip() {
        assert_eq!("counter".parse::<Method>().unwrap(), Method::Counter);
        assert_eq!("partition".parse::<Method>().unwrap(), Method::Partition);
        assert!("both".parse::<Method>().is_err());
        assert_eq!(Method::Partition.to_string(), "partition");
    }
}
