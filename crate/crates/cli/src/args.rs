use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Parser, Debug)]
#[command(name = "qc", version, about = "Exact icosahedral quasicrystals and their aperiodic Jordan algebras")]
pub struct Cli {
    /// JSON file supplying defaults for any of the run options below.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate a model set and write it as CSV, JSON, SVG or OBJ.
    Generate(GenerateArgs),
    /// Jordan multiplication table over a set of generators.
    Table(TableArgs),
    /// Run invariant suites and emit a JSON report.
    Verify(VerifyArgs),
    /// Check that an isometry transfers to the model set and its algebra.
    Symmetry(SymmetryArgs),
    /// Jacobi identity and window acceptability for the Witt bracket.
    WittCheck(WittArgs),
    /// Write reference data: the icosian group, root systems, window facets.
    Export(ExportArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct SchemeArgs {
    /// Preset name (fibonacci-palindromic, fibonacci, fibonacci-unit, penrose,
    /// z6, z6-icosian, elser-sloane).
    #[arg(long)]
    pub scheme: Option<String>,
    /// Custom window: a JSON window file, or `lo,hi` for an interval window
    /// on the chosen scheme's lattice.
    #[arg(long)]
    pub window: Option<String>,
    /// Ball radius in physical space: a rational (`8`, `3/2`) or a golden
    /// literal (`1+2*tau`, `1/2+1/2*sqrt5`).
    #[arg(long)]
    pub radius: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Md,
    Svg,
    Obj,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output path; standard output when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Row generators: `a..b` (integral chain labels on Fibonacci schemes,
    /// batch indices elsewhere) or `;`-separated points.
    #[arg(long, allow_hyphen_values = true)]
    pub rows: String,
    /// Column generators, same syntax as `--rows`.
    #[arg(long, allow_hyphen_values = true)]
    pub cols: String,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Suite to run; repeatable. All suites when absent.
    #[arg(long)]
    pub suite: Vec<String>,
    /// Restrict the coxeter suite to one group.
    #[arg(long, value_parser = ["h2", "h3", "h4"])]
    pub group: Option<String>,
    /// Include the order-14400 H4 enumeration.
    #[arg(long)]
    pub long: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random cases per identity suite.
    #[arg(long)]
    pub cases: Option<usize>,
    /// Random multi-term pairs for the Jordan identity and Witt triples.
    #[arg(long)]
    pub random_elements: Option<usize>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    /// The scheme's default isometries.
    Default,
    Identity,
    Negation,
    /// Multiplication by a primitive fifth root of unity (Penrose).
    Xi,
    /// The five printed 3x3 icosahedral matrices (z6).
    Table,
    /// Conjugation by the five reference unit icosians (pure icosians).
    Conjugation,
}

#[derive(Args, Debug)]
pub struct SymmetryArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[arg(long, value_enum, default_value = "default")]
    pub map: MapKind,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WittArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Random triples for the unwindowed Jacobi check.
    #[arg(long)]
    pub triples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportWhat {
    /// The 120-element icosian group with products and A5 images (JSON).
    Group,
    /// Root system coordinates (CSV).
    Roots,
    /// H-representation of the scheme's window (JSON).
    Hrep,
    /// Model-set points, as `generate`.
    Points,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[arg(value_enum)]
    pub what: ExportWhat,
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[arg(long, value_parser = ["h2", "h3", "h4"], default_value = "h4")]
    pub group: String,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Defaults read from `--config`. Flags override every field.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub scheme: Option<String>,
    pub window: Option<String>,
    pub radius: Option<String>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub long_tests: Option<bool>,
    pub threads: Option<usize>,
}

impl SchemeArgs {
    pub fn merged(&self, cfg: &Config) -> SchemeArgs {
        SchemeArgs {
            scheme: self.scheme.clone().or_else(|| cfg.scheme.clone()),
            window: self.window.clone().or_else(|| cfg.window.clone()),
            radius: self.radius.clone().or_else(|| cfg.radius.clone()),
        }
    }
}
