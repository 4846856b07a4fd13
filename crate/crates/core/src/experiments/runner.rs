use std::path::Path;
use std::time::Instant;

use log::{debug, info, warn};
use rayon::prelude::*;

use super::config::{ExperimentConfig, Mode};
use super::table::{ConsistencyRow, ConsistencyTable, ResultRow, ResultTable};
use crate::error::{Error, Result};
use crate::filters::FilterSpec;
use crate::graph::{
    load_communities, load_edge_list, normalized_laplacian, unnormalized_laplacian, Graph, Gso,
};
use crate::random_models::{rewire_count_preserving, rewire_sbm, sample_ppm};
use crate::rng::{mix_seed, PHASE_REWIRE};
use crate::spectral::{eigh, spectral_norm, structural_terms, EigenPair};
use crate::stability::{theorem1_bound, EtaMode};

/// Seed of trial `trial` at grid point `(n, p_re_index)`.
pub fn trial_seed(master: u64, n: usize, p_re_index: usize, trial: usize) -> u64 {
    mix_seed(&[master, n as u64, p_re_index as u64, trial as u64])
}

/// Seed of the perturbation step of a trial, independent of its sampling
/// stream.
pub fn rewire_seed(trial_seed: u64) -> u64 {
    mix_seed(&[trial_seed, PHASE_REWIRE])
}

/// Runs `f` on a dedicated pool of `threads` workers (all cores when
/// `None`).
pub fn with_workers<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

#[derive(Clone, Copy, Debug)]
struct Task {
    n: usize,
    p_re: f64,
    trial: usize,
    seed: u64,
}

fn grid_tasks(cfg: &ExperimentConfig, ns: &[usize]) -> Vec<Task> {
    let p_grid = cfg.p_re_grid();
    let mut tasks = Vec::new();
    for &n in ns {
        for (p_index, &p_re) in p_grid.iter().enumerate() {
            for trial in 0..cfg.trials {
                tasks.push(Task {
                    n,
                    p_re,
                    trial,
                    seed: trial_seed(cfg.master_seed, n, p_index, trial),
                });
            }
        }
    }
    tasks
}

fn expect_mode(cfg: &ExperimentConfig, mode: Mode) -> Result<()> {
    cfg.validate()?;
    if cfg.mode != mode {
        return Err(Error::Config(format!(
            "config mode is {} but the {} runner was invoked",
            cfg.mode, mode
        )));
    }
    Ok(())
}

struct Pair<'a> {
    mode: Mode,
    task: Task,
    g: &'a Graph,
    ghat: &'a Graph,
}

impl Pair<'_> {
    fn row(&self, gso: Gso, filter: &FilterSpec, started: Instant) -> ResultRow {
        ResultRow {
            mode: self.mode,
            gso,
            filter: filter.label(),
            n: self.task.n,
            p_re: self.task.p_re,
            trial: self.task.trial,
            seed: self.task.seed,
            distance: f64::NAN,
            leakage: f64::NAN,
            eig_term: f64::NAN,
            vec_term: f64::NAN,
            total: f64::NAN,
            eta_empirical: f64::NAN,
            gap_ok: false,
            connected: self.g.is_connected() && self.ghat.is_connected(),
            error: None,
            wall_time: started.elapsed().as_secs_f64(),
        }
    }

    /// One row per filter; `base` supplies a cached decomposition of `g`.
    fn measure(
        &self,
        cfg: &ExperimentConfig,
        gso: Gso,
        base: Option<&EigenPair>,
        out: &mut Vec<ResultRow>,
    ) {
        let started = Instant::now();
        let filters = cfg.filters_for(gso);
        let spectra = (|| -> Result<(Option<EigenPair>, EigenPair)> {
            let e = match base {
                Some(_) => None,
                None => Some(eigh(&gso.build(self.g)?)?),
            };
            Ok((e, eigh(&gso.build(self.ghat)?)?))
        })();
        let (owned, ehat) = match spectra {
            Ok(s) => s,
            Err(err) => {
                for f in &filters {
                    let mut r = self.row(gso, f, started);
                    r.error = Some(err.to_string());
                    out.push(r);
                }
                return;
            }
        };
        let e = base
            .or(owned.as_ref())
            .expect("one decomposition is present");
        for f in &filters {
            let mut r = self.row(gso, f, started);
            match theorem1_bound(f, e, &ehat, cfg.k, EtaMode::Empirical, self.task.n) {
                Ok(b) => {
                    r.distance = b.distance;
                    r.leakage = b.leakage;
                    r.eig_term = b.eig_term;
                    r.vec_term = b.vec_term;
                    r.total = b.total;
                    r.eta_empirical = b.eta;
                    r.gap_ok = b.gap_ok;
                }
                Err(err) => r.error = Some(err.to_string()),
            }
            r.wall_time = started.elapsed().as_secs_f64();
            out.push(r);
        }
    }
}

/// Planted-partition Monte Carlo: sample `G`, rewire it into `Ĝ`, and
/// record the filter distance with the bound breakdown for every
/// configured operator and filter.
pub fn run_synthetic(cfg: &ExperimentConfig) -> Result<ResultTable> {
    expect_mode(cfg, Mode::Synthetic)?;
    let tasks = grid_tasks(cfg, &cfg.n_grid());
    info!("synthetic: {} trials", tasks.len());
    let rows: Vec<Vec<ResultRow>> = tasks
        .par_iter()
        .map(|&task| {
            let mut out = Vec::new();
            let ppm = cfg.ppm_params(task.n).expect("validated");
            let sbm = ppm.to_sbm().expect("validated");
            let g = sample_ppm(&ppm, task.seed).expect("validated");
            let ghat =
                rewire_sbm(&g, &sbm, task.p_re, rewire_seed(task.seed)).expect("p_re validated");
            let pair = Pair {
                mode: Mode::Synthetic,
                task,
                g: &g,
                ghat: &ghat,
            };
            for gso in cfg.gsos() {
                pair.measure(cfg, gso, None, &mut out);
            }
            debug!("n={} p_re={} trial={} done", task.n, task.p_re, task.trial);
            out
        })
        .collect();
    Ok(ResultTable::new(rows.into_iter().flatten().collect()))
}

/// Count-preserving rewiring of a fixed network with known communities.
/// The decomposition of `g` is computed once per operator.
pub fn run_real(cfg: &ExperimentConfig, g: &Graph, membership: &[usize]) -> Result<ResultTable> {
    expect_mode(cfg, Mode::Real)?;
    if membership.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: membership.len(),
        });
    }
    let gsos = cfg.gsos();
    let mut bases = Vec::with_capacity(gsos.len());
    for &gso in &gsos {
        bases.push(gso.build(g).and_then(|s| eigh(&s)));
    }
    let tasks = grid_tasks(cfg, &[g.n()]);
    info!("real: {} trials on {} nodes", tasks.len(), g.n());
    let rows: Vec<Result<Vec<ResultRow>>> = tasks
        .par_iter()
        .map(|&task| {
            let rewired =
                rewire_count_preserving(g, membership, task.p_re, rewire_seed(task.seed))?;
            if !rewired.shortfall.is_empty() {
                warn!(
                    "p_re={} trial={}: {} block pairs could not be refilled",
                    task.p_re,
                    task.trial,
                    rewired.shortfall.len()
                );
            }
            let pair = Pair {
                mode: Mode::Real,
                task,
                g,
                ghat: &rewired.graph,
            };
            let mut out = Vec::new();
            for (gso, base) in gsos.iter().zip(&bases) {
                match base {
                    Ok(e) => pair.measure(cfg, *gso, Some(e), &mut out),
                    Err(err) => {
                        for f in &cfg.filters_for(*gso) {
                            let mut r = pair.row(*gso, f, Instant::now());
                            r.error = Some(err.to_string());
                            out.push(r);
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut flat = Vec::new();
    for r in rows {
        flat.extend(r?);
    }
    Ok(ResultTable::new(flat))
}

/// Loads an edge list and its community file, dropping self-loops and
/// repeated edges.
pub fn load_real(
    edges: impl AsRef<Path>,
    communities: impl AsRef<Path>,
) -> Result<(Graph, Vec<usize>)> {
    let g = load_edge_list(edges, true)?;
    let membership = load_communities(communities, g.n())?;
    Ok((g, membership))
}

/// Drift of the bottom spectral components and of the normalized Laplacian
/// between a planted partition and its rewired copy; at `p_re = 1` the two
/// are independent draws.
pub fn run_consistency(cfg: &ExperimentConfig) -> Result<ConsistencyTable> {
    expect_mode(cfg, Mode::Consistency)?;
    let tasks = grid_tasks(cfg, &cfg.n_grid());
    info!("consistency: {} trials", tasks.len());
    let rows: Vec<ConsistencyRow> = tasks
        .par_iter()
        .map(|&task| {
            let started = Instant::now();
            let ppm = cfg.ppm_params(task.n).expect("validated");
            let sbm = ppm.to_sbm().expect("validated");
            let g = sample_ppm(&ppm, task.seed).expect("validated");
            let ghat =
                rewire_sbm(&g, &sbm, task.p_re, rewire_seed(task.seed)).expect("p_re validated");
            let mut row = ConsistencyRow {
                n: task.n,
                p_re: task.p_re,
                trial: task.trial,
                seed: task.seed,
                vec_drift: f64::NAN,
                eig_drift: f64::NAN,
                proj_drift: f64::NAN,
                lnorm_diff: f64::NAN,
                connected: g.is_connected() && ghat.is_connected(),
                error: None,
                wall_time: 0.0,
            };
            let measured = (|| -> Result<()> {
                let e = eigh(&unnormalized_laplacian(&g))?;
                let ehat = eigh(&unnormalized_laplacian(&ghat))?;
                let s = structural_terms(&e, &ehat, cfg.k)?;
                row.vec_drift = s.vec_drift;
                row.eig_drift = s.eig_drift;
                row.proj_drift = s.proj_drift;
                let diff = normalized_laplacian(&g)?.sub(&normalized_laplacian(&ghat)?)?;
                row.lnorm_diff = spectral_norm(&diff)?;
                Ok(())
            })();
            if let Err(err) = measured {
                row.error = Some(err.to_string());
            }
            row.wall_time = started.elapsed().as_secs_f64();
            row
        })
        .collect();
    Ok(ConsistencyTable::new(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::table::write_csv;

    fn tiny(mode: Mode) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(mode);
        cfg.n_grid = Some(vec![100]);
        cfg.p_re_grid = Some(vec![0.1]);
        cfg.trials = 1;
        cfg.filters = Some(vec![FilterSpec::low_pass_exp(1.0, true)]);
        cfg
    }

    #[test]
    fn one_trial_one_row() {
        let t = run_synthetic(&tiny(Mode::Synthetic)).unwrap();
        assert_eq!(t.len(), 1);
        let r = &t.rows[0];
        assert!(r.error.is_none());
        assert!(r.distance >= 0.0 && r.distance <= 2.0);
        assert_eq!(r.total, r.leakage + r.eig_term + r.vec_term);
    }

    #[test]
    fn wrong_mode_is_a_config_error() {
        let err = run_synthetic(&tiny(Mode::Consistency)).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn identical_bytes_across_worker_counts() {
        let mut cfg = tiny(Mode::Synthetic);
        cfg.trials = 3;
        cfg.p_re_grid = Some(vec![0.1, 0.9]);
        cfg.gso =
            super::super::config::GsoSelection::Many(vec![Gso::Unnormalized, Gso::Normalized]);
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.csv");
        let b = dir.path().join("b.csv");
        write_csv(
            &with_workers(Some(1), || run_synthetic(&cfg))
                .unwrap()
                .unwrap(),
            &a,
            false,
        )
        .unwrap();
        write_csv(
            &with_workers(Some(3), || run_synthetic(&cfg))
                .unwrap()
                .unwrap(),
            &b,
            false,
        )
        .unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }

    #[test]
    fn real_mode_without_rewiring_has_zero_distance() {
        let mut cfg = tiny(Mode::Real);
        cfg.p_re_grid = Some(vec![0.0, 0.2]);
        cfg.trials = 2;
        let ppm = crate::random_models::PpmParams::log_scaled(120, 3, 13.0, 2.0).unwrap();
        let g = sample_ppm(&ppm, 5).unwrap();
        let membership = g.membership().unwrap().to_vec();
        let t = run_real(&cfg, &g.without_membership(), &membership).unwrap();
        assert_eq!(t.len(), 4);
        for r in &t.rows {
            assert!(r.error.is_none());
            if r.p_re == 0.0 {
                assert_eq!(r.distance, 0.0);
            } else {
                assert!(r.distance > 0.0);
            }
        }
    }

    #[test]
    fn consistency_rows_are_complete() {
        let mut cfg = tiny(Mode::Consistency);
        cfg.p_re_grid = None;
        cfg.trials = 2;
        let t = run_consistency(&cfg).unwrap();
        assert_eq!(t.len(), 2);
        for r in &t.rows {
            assert_eq!(r.p_re, 1.0);
            assert!(r.error.is_none());
            assert!(r.vec_drift.is_finite() && r.lnorm_diff > 0.0);
            assert!(r.proj_drift <= r.vec_drift + 1e-12);
        }
    }
}
