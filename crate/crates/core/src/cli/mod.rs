//! Command-line orchestration: a serializable run configuration, dispatch
//! to the analysis modules and JSON/CSV report emission.
//!
//! The binary is a thin wrapper around [`run`], so every subcommand can be
//! driven in-process.

mod args;
mod io;
mod run;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;

pub use args::Cli;
pub use io::{read_grid_csv, read_points_csv, write_plot_csv};
pub use run::{run, RunOutcome, EXIT_INTERNAL, EXIT_OK, EXIT_PRECONDITION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Subcommand {
    Certify,
    Classify,
    SynthField,
    Seqset,
    Dimension,
    Encode,
    Recognize,
    Identities,
}

/// Everything a run depends on. Reports embed it verbatim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    pub function_spec: Option<String>,
    pub input_path: Option<PathBuf>,
    /// JSON destination; standard output when absent.
    pub output_path: Option<PathBuf>,
    /// Plot-data CSV destination.
    pub plot_path: Option<PathBuf>,
    pub interval: Option<String>,
    pub grid_n: usize,
    pub eps_value: f64,
    pub eps_deriv: f64,
    pub seed: u64,
    pub k: usize,
    pub depth: u32,
    pub trials: usize,
    pub base: u32,
    pub precision: u32,
    pub x: Option<f64>,
    pub n_max: usize,
    pub j_min: u32,
    pub j_max: u32,
    pub p_min: u32,
    pub p_max: u32,
    pub samples: usize,
    pub second_spec: Option<String>,
    pub automaton_path: Option<PathBuf>,
    pub words: Vec<String>,
}

impl RunConfig {
    pub fn new(subcommand: Subcommand) -> Self {
        let tol = ToleranceConfig::default();
        RunConfig {
            subcommand,
            function_spec: None,
            input_path: None,
            output_path: None,
            plot_path: None,
            interval: None,
            grid_n: tol.grid_n,
            eps_value: tol.eps_value,
            eps_deriv: tol.eps_deriv,
            seed: tol.seed,
            k: 2,
            depth: crate::classify::DEFAULT_AFFINE_DEPTH,
            trials: 1000,
            base: 2,
            precision: 16,
            x: None,
            n_max: 512,
            j_min: 0,
            j_max: 40,
            p_min: 4,
            p_max: 10,
            samples: crate::base_r::DEFAULT_SAMPLES,
            second_spec: None,
            automaton_path: None,
            words: Vec::new(),
        }
    }

    pub fn with_fn(mut self, spec: &str) -> Self {
        self.function_spec = Some(spec.to_string());
        self
    }

    pub fn tolerances(&self) -> ToleranceConfig {
        ToleranceConfig {
            eps_value: self.eps_value,
            eps_deriv: self.eps_deriv,
            grid_n: self.grid_n,
            seed: self.seed,
            ..ToleranceConfig::default()
        }
    }
}
