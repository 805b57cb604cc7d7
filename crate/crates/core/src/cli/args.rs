use std::path::PathBuf;

use clap::{Args, Parser};

use super::{RunConfig, Subcommand};
use crate::base_r::max_precision;

/// Executable criteria for smoothness, convexity, repetition, field
/// synthesis, sequence-set dimension and base-r recognizability.
#[derive(Debug, Parser)]
#[command(name = "tame", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Subcommand,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Args)]
pub struct Options {
    /// Function spec, e.g. "poly:[1,0,0] on (0,1)".
    #[arg(long = "fn")]
    pub function: Option<String>,
    /// Input CSV: an `x,fx` grid for function commands, points for seqset/dimension.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// JSON report path (standard output when omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Plot-data CSV path.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// Analysis interval, e.g. "[0,1]" (defaults to the function's domain).
    #[arg(long)]
    pub interval: Option<String>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long = "eps-deriv")]
    pub eps_deriv: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Difference order.
    #[arg(long)]
    pub k: Option<usize>,
    /// Dyadic depth for local-affineness regions.
    #[arg(long)]
    pub depth: Option<u32>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub base: Option<u32>,
    #[arg(long)]
    pub precision: Option<u32>,
    /// Real number to encode.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    /// Number of sequence terms generated from --fn.
    #[arg(long = "n-max")]
    pub n_max: Option<usize>,
    #[arg(long = "j-min")]
    pub j_min: Option<u32>,
    #[arg(long = "j-max")]
    pub j_max: Option<u32>,
    #[arg(long = "p-min")]
    pub p_min: Option<u32>,
    #[arg(long = "p-max")]
    pub p_max: Option<u32>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Second function for the additivity identity.
    #[arg(long = "gfn")]
    pub second: Option<String>,
    /// Automaton JSON for membership queries.
    #[arg(long)]
    pub automaton: Option<PathBuf>,
    /// Digit word, one per automaton component.
    #[arg(long = "word")]
    pub words: Vec<String>,
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let o = self.opts;
        let mut c = RunConfig::new(self.command);
        c.function_spec = o.function;
        c.input_path = o.input;
        c.output_path = o.output;
        c.plot_path = o.plot;
        c.interval = o.interval;
        c.second_spec = o.second;
        c.automaton_path = o.automaton;
        c.words = o.words;
        c.x = o.x;
        macro_rules! set {
            ($($field:ident = $opt:expr),*) => { $(if let Some(v) = $opt { c.$field = v; })* };
        }
        set!(
            grid_n = o.grid,
            eps_value = o.eps,
            eps_deriv = o.eps_deriv,
            seed = o.seed,
            k = o.k,
            depth = o.depth,
            trials = o.trials,
            base = o.base,
            n_max = o.n_max,
            j_min = o.j_min,
            j_max = o.j_max,
            p_min = o.p_min,
            p_max = o.p_max,
            samples = o.samples
        );
        c.precision = o.precision.unwrap_or_else(|| c.precision.min(max_precision(c.base.clamp(2, 36))));
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_map_onto_config() {
        let cli = Cli::try_parse_from(["tame", "encode", "--x", "-0.5", "--base", "10"]).unwrap();
        let c = cli.into_config();
        assert_eq!(c.subcommand, Subcommand::Encode);
        assert_eq!((c.x, c.base, c.precision), (Some(-0.5), 10, 15));
        let c = Cli::try_parse_from(["tame", "synth-field", "--fn", "sin on (0,3)", "--grid", "256", "--seed", "7"])
            .unwrap()
            .into_config();
        assert_eq!((c.grid_n, c.seed), (256, 7));
        assert_eq!(c.function_spec.as_deref(), Some("sin on (0,3)"));
    }
}
