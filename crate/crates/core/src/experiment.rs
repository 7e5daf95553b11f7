//! Queue-numbers of random regular graphs next to the two bounds, as CSV and
//! SVG.

use std::fmt::Write as _;
use std::time::Instant;

use crate::bounds::{universal_upper, theorem_lower};
use crate::error::{Error, Result};
use crate::exec::{map_collect, Execution};
use crate::layout::{exact_queue_number, heuristic_queue_number, DEFAULT_NODE_BUDGET};
use crate::randreg::gen_regular;

pub const CSV_HEADER: &str = "# queuelab experiment v1";
pub const CSV_COLUMNS: &str = "delta,n,seed,method,queue_number,theorem_lower,universal_upper,runtime_ms,note";

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub delta: u32,
    pub n_list: Vec<u32>,
    pub samples: u64,
    pub seed: u64,
    /// Exact search up to this many vertices, heuristic above.
    pub exact_limit: u32,
    pub node_budget: u64,
    pub restarts: u32,
    /// Fill the `runtime_ms` column.
    pub timing: bool,
    pub execution: Execution,
}

impl ExperimentConfig {
    pub fn new(delta: u32, n_list: Vec<u32>, samples: u64, seed: u64) -> Self {
        ExperimentConfig {
            delta,
            n_list,
            samples,
            seed,
            exact_limit: 12,
            node_budget: DEFAULT_NODE_BUDGET,
            restarts: 200,
            timing: false,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact,
    /// Exact search stopped by its node budget; the value is an upper bound.
    Budget,
    Heuristic,
    /// No graph to measure; `note` says why.
    None,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Budget => "budget",
            Method::Heuristic => "heuristic",
            Method::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRow {
    pub delta: u32,
    pub n: u32,
    pub seed: u64,
    pub method: Method,
    /// `None` when generation failed; `note` says why.
    pub queue_number: Option<u32>,
    pub theorem_lower: f64,
    pub universal_upper: f64,
    pub runtime_ms: Option<f64>,
    pub note: String,
}

impl ExperimentRow {
    pub fn to_csv(&self) -> String {
        let opt = |x: Option<String>| x.unwrap_or_default();
        format!(
            "{},{},{},{},{},{:.6},{:.6},{},{}",
            self.delta,
            self.n,
            self.seed,
            self.method.as_str(),
            opt(self.queue_number.map(|q| q.to_string())),
            self.theorem_lower,
            self.universal_upper,
            opt(self.runtime_ms.map(|t| format!("{t:.3}"))),
            self.note
        )
    }

    /// The queue-number respects the universal upper bound.
    pub fn within_upper(&self) -> bool {
        self.queue_number.is_none_or(|q| q as f64 <= self.universal_upper.ceil())
    }
}

/// One row per `(n, sample)`, in that order. Sample `i` uses seed
/// `seed + i` for both the graph and any heuristic restarts.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    if config.samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    if config.delta == 0 {
        return Err(Error::InvalidArgument("delta must be at least 1".into()));
    }
    let jobs: Vec<(u32, u64)> = config
        .n_list
        .iter()
        .flat_map(|&n| (0..config.samples).map(move |i| (n, config.seed.wrapping_add(i))))
        .collect();
    Ok(map_collect(config.execution, &jobs, |&(n, seed)| run_one(config, n, seed)))
}

fn run_one(config: &ExperimentConfig, n: u32, seed: u64) -> ExperimentRow {
    let start = Instant::now();
    let delta = config.delta;
    let mut row = ExperimentRow {
        delta,
        n,
        seed,
        method: if n <= config.exact_limit { Method::Exact } else { Method::Heuristic },
        queue_number: None,
        theorem_lower: theorem_lower(n, delta, 1.0),
        universal_upper: universal_upper(n, delta),
        runtime_ms: None,
        note: String::new(),
    };
    let outcome = gen_regular(n, delta, seed).and_then(|sample| match row.method {
        Method::Heuristic => heuristic_queue_number(&sample.graph, config.restarts, seed),
        _ => exact_queue_number(&sample.graph, config.node_budget),
    });
    match outcome {
        Ok(r) => {
            if row.method == Method::Exact && !r.exact {
                row.method = Method::Budget;
            }
            row.queue_number = Some(r.queue_number);
        }
        Err(e) => {
            row.method = Method::None;
            row.note = note_text(&e);
        }
    }
    if config.timing {
        row.runtime_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    }
    row
}

fn note_text(e: &Error) -> String {
    e.to_string().replace([',', '\n'], ";")
}

pub fn to_csv(rows: &[ExperimentRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n{CSV_COLUMNS}\n");
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

/// Scatter of queue-number against `n` with the lower bound (`c = 1`) and
/// the universal upper bound drawn as curves.
pub fn to_svg(rows: &[ExperimentRow]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 48.0;
    let points: Vec<(u32, u32)> = rows.iter().filter_map(|r| r.queue_number.map(|q| (r.n, q))).collect();
    let delta = rows.first().map_or(3, |r| r.delta);
    let n_min = rows.iter().map(|r| r.n).min().unwrap_or(1).max(1);
    let n_max = rows.iter().map(|r| r.n).max().unwrap_or(2).max(n_min + 1);
    let y_max = points
        .iter()
        .map(|&(_, q)| q as f64)
        .chain([universal_upper(n_max, delta)])
        .fold(1.0, f64::max)
        .ceil();
    let x = |n: f64| PAD + (n - n_min as f64) / (n_max - n_min) as f64 * (W - 2.0 * PAD);
    let y = |v: f64| H - PAD - v / y_max * (H - 2.0 * PAD);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<path d="M{PAD} {b} H{r} M{PAD} {b} V{PAD}" stroke="black" fill="none"/>"#,
        b = H - PAD,
        r = W - PAD
    );
    for (name, colour, f) in [
        ("lower", "#1f77b4", &(|n: u32| theorem_lower(n, delta, 1.0)) as &dyn Fn(u32) -> f64),
        ("upper", "#d62728", &|n: u32| universal_upper(n, delta)),
    ] {
        let path: Vec<String> = (n_min..=n_max)
            .enumerate()
            .map(|(i, n)| format!("{}{:.2} {:.2}", if i == 0 { 'M' } else { 'L' }, x(n as f64), y(f(n))))
            .collect();
        let _ = writeln!(svg, r#"<path class="{name}" d="{}" stroke="{colour}" fill="none"/>"#, path.join(" "));
    }
    for &(n, q) in &points {
        let _ = writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="black"/>"#, x(n as f64), y(q as f64));
    }
    let _ = writeln!(svg, r#"<text x="{PAD}" y="{}" font-size="12">n = {n_min}..{n_max}, delta = {delta}</text>"#, H - 12.0);
    let _ = writeln!(svg, r#"<text x="8" y="{}" font-size="12">{y_max}</text>"#, PAD + 4.0);
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(n_list: Vec<u32>, samples: u64) -> ExperimentConfig {
        ExperimentConfig::new(3, n_list, samples, 2024)
    }

    #[test]
    fn k4_row() {
        let rows = run_experiment(&config(vec![4], 1)).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].queue_number, Some(2));
        assert_eq!(rows[0].method, Method::Exact);
        assert!(rows[0].within_upper());
    }

    #[test]
    fn upper_bound_respected() {
        let rows = run_experiment(&config(vec![8], 10)).unwrap();
        assert_eq!(rows.len(), 10);
        for r in &rows {
            assert!(r.queue_number.unwrap() <= 10);
            assert!(r.within_upper());
        }
    }

    #[test]
    fn parity_error_recorded() {
        let rows = run_experiment(&config(vec![5, 4], 2)).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows[0].queue_number.is_none() && !rows[0].note.is_empty());
        assert_eq!(rows[0].method, Method::None);
        assert!(!rows[0].note.contains(','));
        assert_eq!(rows[2].queue_number, Some(2));
        let csv = to_csv(&rows);
        for line in csv.lines().skip(1) {
            assert_eq!(line.matches(',').count(), 8, "{line}");
        }
    }

    #[test]
    fn csv_is_reproducible() {
        let mut c = config(vec![4, 6, 8], 3);
        let a = to_csv(&run_experiment(&c).unwrap());
        c.execution = Execution::Sequential;
        let b = to_csv(&run_experiment(&c).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with(CSV_HEADER));
        assert_eq!(a.lines().count(), 2 + 9);
    }

    #[test]
    fn heuristic_above_limit() {
        let mut c = config(vec![14], 2);
        c.exact_limit = 10;
        let rows = run_experiment(&c).unwrap();
        assert!(rows.iter().all(|r| r.method == Method::Heuristic && r.within_upper()));
    }

    #[test]
    fn svg_has_points_and_curves() {
        let rows = run_experiment(&config(vec![4, 6], 2)).unwrap();
        let svg = to_svg(&rows);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<circle").count(), 4);
        assert!(svg.contains(r#"class="lower""#) && svg.contains(r#"class="upper""#));
    }

    #[test]
    fn timing_fills_runtime() {
        let mut c = config(vec![4], 1);
        c.timing = true;
        assert!(run_experiment(&c).unwrap()[0].runtime_ms.is_some());
    }
}
