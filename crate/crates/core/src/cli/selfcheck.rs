//! Seeded property suite comparing the certificates with the oracle.

use std::fmt;

use rayon::prelude::*;

use crate::certify::{audit_cut, solve_menger_with, solve_xpaths_with, CertifyError};
use crate::oracle::{self, OracleBounds, SeparatorSize};
use crate::walks::enumerate_xy_links;

use super::gen::{derive_seed, random_trial};
use super::instance::{serialize_instance, InstanceFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelfcheckConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_set: usize,
}

impl Default for SelfcheckConfig {
    fn default() -> Self {
        SelfcheckConfig {
            trials: 200,
            seed: 7,
            max_vertices: 7,
            max_edges: 14,
            max_set: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Property {
    /// Solver value equals the oracle, the separator is valid and small.
    OracleEquivalence,
    /// Integral primal and dual optima with equal values.
    LpIntegrality,
    /// The cut meets every link and the potentials telescope.
    CutSoundness,
    /// Without turnarounds, max paths equals min separator.
    NoTurnaround,
    /// X-path packing is optimal and its double bounds the hitting set.
    XPaths,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::OracleEquivalence,
        Property::LpIntegrality,
        Property::CutSoundness,
        Property::NoTurnaround,
        Property::XPaths,
    ];
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Property::OracleEquivalence => "oracle-equivalence",
            Property::LpIntegrality => "lp-integrality",
            Property::CutSoundness => "cut-soundness",
            Property::NoTurnaround => "no-turnaround",
            Property::XPaths => "x-paths",
        };
        f.write_str(name)
    }
}

/// What the LP side looked like on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LpFacts {
    pub duality: bool,
    pub relaxation_integral: bool,
    pub integrality_gap: bool,
    pub dual_integral: bool,
    pub branch_nodes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialReport {
    pub index: usize,
    pub seed: u64,
    pub vertices: usize,
    pub edges: usize,
    pub value: Option<usize>,
    pub oracle_max: Option<usize>,
    pub oracle_min: Option<SeparatorSize>,
    pub separator_size: Option<usize>,
    pub has_turnaround: bool,
    pub xpath_packing: Option<usize>,
    pub oracle_xpath: Option<(usize, usize)>,
    pub cut_links_checked: usize,
    pub lp: Option<LpFacts>,
    pub failures: Vec<(Property, String)>,
}

impl TrialReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, p: Property) -> bool {
        self.failures.iter().any(|(q, _)| *q == p)
    }
}

/// Runs every property on one instance.
pub fn check_instance(index: usize, seed: u64, inst: &InstanceFile, bounds: &OracleBounds) -> TrialReport {
    let g = &inst.graph;
    let mut r = TrialReport {
        index,
        seed,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        value: None,
        oracle_max: None,
        oracle_min: None,
        separator_size: None,
        has_turnaround: false,
        xpath_packing: None,
        oracle_xpath: None,
        cut_links_checked: 0,
        lp: None,
        failures: Vec::new(),
    };
    let mut failures = Vec::new();
    let mut fail = |p: Property, msg: String| failures.push((p, msg));

    let links = enumerate_xy_links(g, &inst.x, &inst.y);
    let has_turnaround = links.iter().any(|l| !l.is_path());
    let oracle_max = oracle::max_links(g, &inst.x, &inst.y, bounds).map(|p| p.value);
    let oracle_min = oracle::min_separator(g, &inst.x, &inst.y, bounds).map(|s| s.size);
    let (oracle_max, oracle_min) = match (oracle_max, oracle_min) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            fail(Property::OracleEquivalence, format!("oracle: {e}"));
            r.failures = failures;
            return r;
        }
    };
    r.has_turnaround = has_turnaround;
    r.oracle_max = Some(oracle_max);
    r.oracle_min = Some(oracle_min);
    if SeparatorSize::Finite(oracle_max) < oracle_min {
        fail(
            Property::OracleEquivalence,
            format!("oracle max {oracle_max} below oracle min {oracle_min}"),
        );
    }

    match solve_menger_with(g, &inst.x, &inst.y, bounds) {
        Ok(cert) => {
            r.value = Some(cert.value);
            r.separator_size = Some(cert.separator.len());
            let c = &cert.checks;
            if cert.trace.is_some() {
                r.lp = Some(LpFacts {
                    duality: c.duality,
                    relaxation_integral: c.relaxation_integral,
                    integrality_gap: c.integrality_gap,
                    dual_integral: c.dual_integral,
                    branch_nodes: c.branch_nodes,
                });
            }
            if cert.value != oracle_max {
                fail(
                    Property::OracleEquivalence,
                    format!("value {} but oracle max {oracle_max}", cert.value),
                );
            }
            if cert.separator.len() > cert.value {
                fail(
                    Property::OracleEquivalence,
                    format!("separator {} exceeds value {}", cert.separator.len(), cert.value),
                );
            }
            if c.separator_valid != Some(true) {
                fail(
                    Property::OracleEquivalence,
                    format!("separator {:?} not confirmed: {:?}", cert.separator, c.separator_valid),
                );
            }
            if !(c.links_valid && c.disjoint && c.value_matches_links) {
                fail(Property::OracleEquivalence, format!("link checks {c:?}"));
            }
            if !(c.dual_integral && c.duality && c.balanced) {
                fail(Property::LpIntegrality, format!("lp checks {c:?}"));
            }
            if !(c.cut_excludes_closing && c.cut_bound && c.separator_bound) {
                fail(Property::CutSoundness, format!("cut checks {c:?}"));
            }
            if let Some(trace) = &cert.trace {
                let audit = audit_cut(trace);
                r.cut_links_checked = audit.paths + audit.turnarounds;
                for msg in audit.failures {
                    fail(Property::CutSoundness, msg);
                }
            }
            if !has_turnaround && !(cert.value == oracle_max && oracle_min == SeparatorSize::Finite(oracle_max)) {
                fail(
                    Property::NoTurnaround,
                    format!("no turnaround, yet max {oracle_max} and min {oracle_min}"),
                );
            }
        }
        Err(e) => {
            let p = match e {
                CertifyError::NotIntegral(_) | CertifyError::NoOptimum(..) => Property::LpIntegrality,
                CertifyError::DualInfeasible(_) | CertifyError::CutInvariant(_) => Property::CutSoundness,
                _ => Property::OracleEquivalence,
            };
            fail(p, format!("solver: {e}"));
        }
    }

    if !inst.x.is_empty() {
        match (solve_xpaths_with(g, &inst.x, bounds), oracle::xpaths(g, &inst.x, bounds)) {
            (Ok(cert), Ok((packing, hitting))) => {
                r.xpath_packing = Some(cert.packing);
                r.oracle_xpath = Some((packing, hitting));
                if cert.packing != packing || 2 * cert.packing < hitting {
                    fail(
                        Property::XPaths,
                        format!("packing {} vs oracle {packing}, hitting {hitting}", cert.packing),
                    );
                }
                if !cert.passed() {
                    fail(Property::XPaths, format!("checks {:?}", cert.checks));
                }
            }
            (Err(e), _) => fail(Property::XPaths, format!("solver: {e}")),
            (_, Err(e)) => fail(Property::XPaths, format!("oracle: {e}")),
        }
    }
    failures.sort();
    r.failures = failures;
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfcheckSummary {
    pub config: SelfcheckConfig,
    /// One report per trial, in trial order.
    pub reports: Vec<TrialReport>,
}

impl SelfcheckSummary {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(TrialReport::passed)
    }

    pub fn failures_of(&self, p: Property) -> usize {
        self.reports.iter().filter(|r| r.failed(p)).count()
    }

    /// Deterministic text report.
    pub fn render(&self, verbose: bool) -> String {
        let mut out = String::new();
        for r in &self.reports {
            if verbose || !r.passed() {
                out.push_str(&format!(
                    "trial {} seed {:#018x}: n={} m={} value={:?} oracle={:?}/{:?} {}\n",
                    r.index,
                    r.seed,
                    r.vertices,
                    r.edges,
                    r.value,
                    r.oracle_max,
                    r.oracle_min.map(|s| s.to_string()),
                    if r.passed() { "ok" } else { "FAIL" }
                ));
                for (p, msg) in &r.failures {
                    out.push_str(&format!("  {p}: {msg}\n"));
                }
            }
        }
        for p in Property::ALL {
            let n = self.failures_of(p);
            out.push_str(&format!("{p}: {} ({n} failing)\n", if n == 0 { "pass" } else { "FAIL" }));
        }
        let lp: Vec<&LpFacts> = self.reports.iter().filter_map(|r| r.lp.as_ref()).collect();
        out.push_str(&format!(
            "relaxation: integral basic optimum on {}/{}, optimum above packing on {}\n",
            lp.iter().filter(|f| f.relaxation_integral).count(),
            lp.len(),
            lp.iter().filter(|f| f.integrality_gap).count()
        ));
        let turnaround_free = self.reports.iter().filter(|r| !r.has_turnaround).count();
        out.push_str(&format!(
            "{} trials, {} without turnarounds, {}\n",
            self.reports.len(),
            turnaround_free,
            if self.passed() { "all passed" } else { "FAILED" }
        ));
        out
    }
}

pub fn trial_instance(cfg: &SelfcheckConfig, i: usize) -> (u64, InstanceFile) {
    let seed = derive_seed(cfg.seed, i as u64);
    (seed, random_trial(seed, cfg.max_vertices, cfg.max_edges, cfg.max_set))
}

/// Trials run in parallel; reports come back in trial order.
pub fn run_selfcheck(cfg: &SelfcheckConfig) -> SelfcheckSummary {
    let bounds = OracleBounds {
        max_vertices: cfg.max_vertices.max(OracleBounds::default().max_vertices),
        max_edges: cfg.max_edges.max(OracleBounds::default().max_edges),
    };
    let reports = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let (seed, inst) = trial_instance(cfg, i);
            check_instance(i, seed, &inst, &bounds)
        })
        .collect();
    SelfcheckSummary {
        config: *cfg,
        reports,
    }
}

/// The instance of a failing trial, for reproduction.
pub fn reproduce(cfg: &SelfcheckConfig, i: usize) -> String {
    serialize_instance(&trial_instance(cfg, i).1)
}
