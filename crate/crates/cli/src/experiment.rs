//! Repeated probe-split evaluation of several predictors on one graph.

use std::fmt::Write as _;
use std::time::Instant;

use attrwalk_core::baselines::BaselineConfig;
use attrwalk_core::evaluation::{auc_exact, auc_sampled, split_probe, AucMode, AucResult};
use attrwalk_core::method::{score, Method};
use attrwalk_core::propagation::PropagationConfig;
use attrwalk_core::seed::{derive_seed, Stream, DEFAULT_SEED};
use attrwalk_core::AttributedGraph;
use serde::Serialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub propagation: PropagationConfig,
    pub baseline: BaselineConfig,
    pub split_fraction: f64,
    pub repetitions: usize,
    pub master_seed: u64,
    pub auc_mode: AucMode,
    pub auc_samples: u64,
    /// Record wall-clock seconds per method. Off by default so that reports
    /// are byte-identical across runs.
    pub record_timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            propagation: PropagationConfig::default(),
            baseline: BaselineConfig::default(),
            split_fraction: 0.1,
            repetitions: 10,
            master_seed: DEFAULT_SEED,
            auc_mode: AucMode::Exact,
            auc_samples: 10_000,
            record_timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodSummary {
    pub method: Method,
    pub runs: Vec<AucResult>,
    pub auc_mean: f64,
    pub auc_std: f64,
    /// Total wall-clock over all repetitions, when recorded.
    pub seconds: Option<f64>,
    /// False if an iterative method hit its sweep cap in any repetition.
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub dataset: String,
    pub config: ExperimentConfig,
    pub methods: Vec<MethodSummary>,
}

/// One machine-readable report line.
#[derive(Debug, Serialize)]
struct Record<'a> {
    dataset: &'a str,
    method: &'a str,
    auc_mean: f64,
    auc_std: f64,
    seconds: Option<f64>,
}

/// Mean and sample standard deviation (0 for a single value).
fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// For each repetition `r`: split with seed `(Split, r)`, score every method
/// on the training graph (attributes are never split), and measure AUC of the
/// probe edges against all remaining non-edges. Sampled AUC draws from
/// `(AucSample, r)`, shared by all methods of that repetition.
pub fn run_experiment(
    dataset: &str,
    graph: &AttributedGraph,
    methods: &[Method],
    cfg: &ExperimentConfig,
) -> Result<EvalReport> {
    if methods.is_empty() {
        return Err(CliError::config("no methods requested"));
    }
    if cfg.repetitions == 0 {
        return Err(CliError::config("repetitions must be at least 1"));
    }
    let mut runs: Vec<Vec<AucResult>> = vec![Vec::with_capacity(cfg.repetitions); methods.len()];
    let mut elapsed = vec![0.0f64; methods.len()];
    let mut converged = vec![true; methods.len()];
    for rep in 0..cfg.repetitions {
        let split = split_probe(graph, cfg.split_fraction, derive_seed(cfg.master_seed, Stream::Split, rep as u64))?;
        let sample_seed = derive_seed(cfg.master_seed, Stream::AucSample, rep as u64);
        for (k, &method) in methods.iter().enumerate() {
            let start = Instant::now();
            let scores = score(method, &split.train, &cfg.propagation, &cfg.baseline)?;
            elapsed[k] += start.elapsed().as_secs_f64();
            if !scores.converged {
                log::warn!(
                    "{method}: repetition {rep} stopped after {} sweeps (delta {:.3e})",
                    scores.iterations,
                    scores.final_delta
                );
                converged[k] = false;
            }
            let auc = match cfg.auc_mode {
                AucMode::Exact => auc_exact(&scores, &split.probe, &split.train)?,
                AucMode::Sampled => auc_sampled(&scores, &split.probe, &split.train, cfg.auc_samples, sample_seed)?,
            };
            log::info!("rep {rep} {method}: AUC {:.4}", auc.auc);
            runs[k].push(auc);
        }
    }
    let methods = methods
        .iter()
        .zip(runs)
        .enumerate()
        .map(|(k, (&method, runs))| {
            let aucs: Vec<f64> = runs.iter().map(|r| r.auc).collect();
            let (auc_mean, auc_std) = mean_std(&aucs);
            MethodSummary {
                method,
                runs,
                auc_mean,
                auc_std,
                seconds: cfg.record_timing.then_some(elapsed[k]),
                converged: converged[k],
            }
        })
        .collect();
    Ok(EvalReport { dataset: dataset.to_string(), config: cfg.clone(), methods })
}

impl EvalReport {
    pub fn all_converged(&self) -> bool {
        self.methods.iter().all(|m| m.converged)
    }

    pub fn get(&self, method: Method) -> Option<&MethodSummary> {
        self.methods.iter().find(|m| m.method == method)
    }

    /// Aligned text table: one row per method, AUC under the dataset name.
    pub fn to_table(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let auc = match c.auc_mode {
            AucMode::Exact => "exact".to_string(),
            AucMode::Sampled => format!("sampled({})", c.auc_samples),
        };
        let _ = writeln!(
            out,
            "# dataset={} c={} tol={} max_iter={} init={:?} split={} reps={} seed={} auc={} lp_epsilon={} katz_beta={}",
            self.dataset,
            c.propagation.c,
            c.propagation.tolerance,
            c.propagation.max_iterations,
            c.propagation.init_mode,
            c.split_fraction,
            c.repetitions,
            c.master_seed,
            auc,
            c.baseline.lp_epsilon,
            c.baseline.katz_beta,
        );
        let width = self.dataset.len().max(8);
        let _ = write!(out, "{:<10} {:>width$} {:>8}", "Method", self.dataset, "std");
        if c.record_timing {
            let _ = write!(out, " {:>10}", "seconds");
        }
        out.push('\n');
        for m in &self.methods {
            let _ = write!(out, "{:<10} {:>width$.4} {:>8.4}", m.method.name(), m.auc_mean, m.auc_std);
            if let Some(s) = m.seconds {
                let _ = write!(out, " {s:>10.3}");
            }
            out.push('\n');
        }
        out
    }

    /// One JSON object per method with fields
    /// `dataset, method, auc_mean, auc_std, seconds`.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for m in &self.methods {
            let record = Record {
                dataset: &self.dataset,
                method: m.method.name(),
                auc_mean: m.auc_mean,
                auc_std: m.auc_std,
                seconds: m.seconds,
            };
            out.push_str(&serde_json::to_string(&record).expect("record serializes"));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use attrwalk_core::baselines::LocalIndex;
    use attrwalk_core::generate::{generate_planted_attribute_graph, PlantedConfig};

    fn small() -> AttributedGraph {
        generate_planted_attribute_graph(&PlantedConfig { n: 60, p_in: 0.3, ..Default::default() }).unwrap().graph
    }

    #[test]
    fn single_method_single_rep() {
        let cfg = ExperimentConfig { repetitions: 1, ..Default::default() };
        let cn = Method::Local(LocalIndex::CommonNeighbors);
        let report = run_experiment("toy", &small(), &[cn], &cfg).unwrap();
        assert_eq!(report.methods.len(), 1);
        assert_eq!(report.methods[0].runs.len(), 1);
        assert_eq!(report.methods[0].auc_std, 0.0);
        assert_eq!(report.to_jsonl().lines().count(), 1);
    }

    #[test]
    fn reproducible_across_runs() {
        let cfg = ExperimentConfig { repetitions: 3, auc_mode: AucMode::Sampled, ..Default::default() };
        let methods = [Method::RandWalk, Method::Katz];
        let a = run_experiment("toy", &small(), &methods, &cfg).unwrap();
        let b = run_experiment("toy", &small(), &methods, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_table(), b.to_table());
        assert_eq!(a.to_jsonl(), b.to_jsonl());
        let aucs: Vec<f64> = a.methods[0].runs.iter().map(|r| r.auc).collect();
        assert!(aucs.windows(2).any(|w| w[0] != w[1]), "repetitions should use distinct splits");
    }

    #[test]
    fn jsonl_field_names() {
        let cfg = ExperimentConfig { repetitions: 2, record_timing: true, ..Default::default() };
        let report = run_experiment("toy", &small(), &[Method::LocalPath], &cfg).unwrap();
        let line = report.to_jsonl();
        let value: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
        let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["auc_mean", "auc_std", "dataset", "method", "seconds"]);
        assert!(value["seconds"].as_f64().is_some());
        assert!(report.to_table().contains("seconds"));
    }

    #[test]
    fn empty_method_list_rejected() {
        assert!(matches!(
            run_experiment("toy", &small(), &[], &ExperimentConfig::default()),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn mean_and_sample_std() {
        let (m, s) = mean_std(&[1.0, 2.0, 3.0]);
        assert_eq!(m, 2.0);
        assert!((s - 1.0).abs() < 1e-15);
    }
}
