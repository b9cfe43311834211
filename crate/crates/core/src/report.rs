//! Job configuration, dispatch and the self-describing report shared by
//! the command-line front end and the examples.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::axioms::{run_all_with, SuiteReport};
use crate::bq::BqContext;
use crate::classical::{classical_points, PointCount};
use crate::error::{Error, Result};
use crate::oq::{OqContext, RConvention, SecondLaw};
use crate::quotient::{coinvariants, quotient_coinvariant_dims, Closure, CoactionKind, QuotientEngine, Variant};
use crate::scalar::is_prime;
use crate::tensor::{BraidWord, TensorPower};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Quotient,
    MappingTorus,
    Coinvariants,
    ClassicalPoints,
    Axioms,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Quotient => "quotient",
            Command::MappingTorus => "mapping-torus",
            Command::Coinvariants => "coinvariants",
            Command::ClassicalPoints => "classical-points",
            Command::Axioms => "axioms",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Table,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidConfig(format!("unknown format `{s}` (expected table or json)"))),
        }
    }
}

/// Convention flags in effect for a run; echoed verbatim into reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Flags {
    pub r_convention: RConvention,
    pub mirror: bool,
    pub variant: Variant,
    pub closure: Closure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobConfig {
    pub command: Command,
    pub braid: String,
    pub strands: usize,
    pub degree: usize,
    pub slack: usize,
    pub trials: usize,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub flags: Flags,
}

impl JobConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            braid: String::new(),
            strands: 1,
            degree: 2,
            slack: 2,
            trials: 50,
            primes: Vec::new(),
            seed: 0,
            flags: Flags::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.strands == 0 {
            return Err(Error::InvalidConfig("strands must be at least 1".into()));
        }
        if let Some(&p) = self.primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        if self.command == Command::ClassicalPoints && self.primes.is_empty() {
            return Err(Error::InvalidConfig("classical-points needs at least one --prime".into()));
        }
        Ok(())
    }
}

/// Output of one job. Fields that a command does not compute stay empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub engine_version: String,
    pub command: Command,
    pub flags: Flags,
    pub seed: u64,
    pub braid: String,
    pub strands: usize,
    pub degree: usize,
    pub working_degree: usize,
    pub graded_dims: Vec<usize>,
    pub stabilized: Vec<bool>,
    pub coinvariant_dims: Vec<usize>,
    /// Coinvariant dimensions from the braided-coaction solve, when computed.
    pub braided_coinvariant_dims: Vec<usize>,
    pub classical_points: Vec<PointCount>,
    pub axioms: Option<SuiteReport>,
}

impl Report {
    fn empty(cfg: &JobConfig, beta: &BraidWord) -> Self {
        Self {
            engine_version: ENGINE_VERSION.to_string(),
            command: cfg.command,
            flags: cfg.flags,
            seed: cfg.seed,
            braid: beta.to_string(),
            strands: cfg.strands,
            degree: cfg.degree,
            working_degree: cfg.degree,
            graded_dims: Vec::new(),
            stabilized: Vec::new(),
            coinvariant_dims: Vec::new(),
            braided_coinvariant_dims: Vec::new(),
            classical_points: Vec::new(),
            axioms: None,
        }
    }

    /// Whether every cross-check carried by the report agreed.
    pub fn consistent(&self) -> bool {
        self.classical_points.iter().all(|pc| pc.matches)
            && (self.braided_coinvariant_dims.is_empty() || self.braided_coinvariant_dims == self.coinvariant_dims)
            && self.axioms.as_ref().is_none_or(SuiteReport::all_as_expected)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let f = &self.flags;
        let _ = writeln!(s, "qskein {} {}", self.engine_version, self.command);
        let _ = writeln!(
            s,
            "r-convention {}, mirror {}, variant {}, closure {}, seed {}",
            f.r_convention, f.mirror, f.variant, f.closure, self.seed
        );
        if self.command != Command::Axioms {
            let braid = if self.braid.is_empty() { "(empty)" } else { &self.braid };
            let _ = writeln!(s, "braid {braid} on {} strands", self.strands);
        }
        if !self.graded_dims.is_empty() {
            let _ = writeln!(s, "degree {} (working {})", self.degree, self.working_degree);
            let _ = writeln!(s, "{:>6} {:>6} {:>10}", "d", "dim", "stabilized");
            for (d, (n, st)) in self.graded_dims.iter().zip(&self.stabilized).enumerate() {
                let _ = writeln!(s, "{d:>6} {n:>6} {st:>10}");
            }
        }
        if !self.coinvariant_dims.is_empty() {
            let _ = writeln!(s, "coinvariants of degree <= d: {:?}", self.coinvariant_dims);
        }
        if !self.braided_coinvariant_dims.is_empty() {
            let _ = writeln!(s, "braided-coaction solve:       {:?}", self.braided_coinvariant_dims);
        }
        if !self.classical_points.is_empty() {
            let _ = writeln!(s, "{:>4} {:>10} {:>10} {:>6}", "p", "count", "oracle", "match");
            for pc in &self.classical_points {
                let _ = writeln!(s, "{:>4} {:>10} {:>10} {:>6}", pc.p, pc.count, pc.oracle_count, pc.matches);
            }
        }
        if let Some(a) = &self.axioms {
            s.push_str(&a.table());
        }
        s
    }
}

fn tensor_power(flags: &Flags) -> Arc<TensorPower> {
    let oq = Arc::new(OqContext::new(flags.r_convention, SecondLaw::default()));
    Arc::new(TensorPower::with_mirror(Arc::new(BqContext::new(oq)), flags.mirror))
}

pub fn run_job(cfg: &JobConfig) -> Result<Report> {
    cfg.validate()?;
    let beta = BraidWord::parse(&cfg.braid, cfg.strands)?;
    let mut report = Report::empty(cfg, &beta);
    if cfg.command == Command::Axioms {
        report.braid.clear();
        report.axioms = Some(run_all_with(cfg.flags.r_convention, cfg.degree, cfg.trials, cfg.seed));
        return Ok(report);
    }
    let tp = tensor_power(&cfg.flags);
    let engine = QuotientEngine::new(tp.clone(), cfg.flags.variant).with_closure(cfg.flags.closure);
    match cfg.command {
        Command::Quotient | Command::MappingTorus => {
            let q = if cfg.command == Command::Quotient {
                engine.link_quotient(&beta, cfg.degree, cfg.slack)?
            } else {
                engine.mapping_torus_quotient(&beta, cfg.degree, cfg.slack)?
            };
            report.working_degree = q.working_degree;
            report.graded_dims = q.graded_dims.clone();
            report.stabilized = q.stabilized.clone();
            report.coinvariant_dims = quotient_coinvariant_dims(&tp, &q);
        }
        Command::Coinvariants => {
            // the full tensor power, no quotient
            for d in 0..=cfg.degree {
                report.coinvariant_dims.push(coinvariants(&tp, cfg.strands, d, CoactionKind::Ordinary).len());
                report.braided_coinvariant_dims.push(coinvariants(&tp, cfg.strands, d, CoactionKind::Braided).len());
            }
        }
        Command::ClassicalPoints | Command::Axioms => {}
    }
    for &p in &cfg.primes {
        report.classical_points.push(classical_points(&engine, &beta, p)?);
    }
    Ok(report)
}

/// Process exit code for a job outcome.
pub fn exit_code(outcome: &Result<Report>) -> i32 {
    match outcome {
        Ok(r) if r.consistent() => 0,
        Ok(_) => 2,
        Err(Error::ResourceLimit(_)) => 3,
        Err(_) => 1,
    }
}
