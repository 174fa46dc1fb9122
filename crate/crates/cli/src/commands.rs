use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use quasijordan::algebra::{fibonacci_label_table, fpal, fpal_label, label_table_markdown, JordanAlgebra};
use quasijordan::export;
use quasijordan::roots::build_delta;
use quasijordan::scheme::{custom_scheme_from_json, fmt_key, hrep_to_json, preset, PointKey, QcPoint, SchemeKind, SchemeSpec};
use quasijordan::symmetry::{self, LatticeMap, TransferStatus};
use quasijordan::verify::{self, SuiteStatus, VerifyOptions};
use quasijordan::window::{Boundary, ConvexWindow};
use quasijordan::witt::{self, WittAlgebra};
use quasijordan::{icosian, GoldenInt, GoldenRat, QcError};
use serde_json::json;

use crate::args::{Command, Config, ExportWhat, Format, MapKind, SchemeArgs};
use crate::{EXIT_HYPOTHESIS, EXIT_VERIFY_FAILED};

pub fn run(cmd: &Command, cfg: &Config) -> Result<u8> {
    match cmd {
        Command::Generate(a) => {
            let s = a.scheme.merged(cfg);
            let fmt = a.format.or(cfg.format).unwrap_or(Format::Csv);
            generate(&s, fmt, a.output.as_deref())
        }
        Command::Table(a) => {
            let s = a.scheme.merged(cfg);
            let fmt = a.format.or(cfg.format).unwrap_or(Format::Md);
            table(&s, &a.rows, &a.cols, fmt, a.output.as_deref())
        }
        Command::Verify(a) => {
            let s = a.scheme.merged(cfg);
            let scheme = resolve_scheme(&s)?;
            let mut opts = VerifyOptions {
                seed: a.seed.or(cfg.seed).unwrap_or(0),
                long: a.long || cfg.long_tests.unwrap_or(false),
                group: a.group.clone(),
                radius: parse_radius(&s)?,
                ..VerifyOptions::default()
            };
            if let Some(c) = a.cases {
                opts.cases = c;
            }
            if let Some(r) = a.random_elements {
                opts.random_elements = r;
            }
            let suites: Vec<&str> = if a.suite.is_empty() {
                verify::SUITES.to_vec()
            } else {
                a.suite.iter().map(String::as_str).collect()
            };
            let report = verify::run(&scheme, &suites, &opts)?;
            emit(a.output.as_deref(), &(serde_json::to_string_pretty(&report)? + "\n"))?;
            Ok(if report.has_failures() {
                EXIT_VERIFY_FAILED
            } else if report.has_hypothesis_failures() {
                EXIT_HYPOTHESIS
            } else {
                0
            })
        }
        Command::Symmetry(a) => symmetry_cmd(&a.scheme.merged(cfg), a.map, a.output.as_deref()),
        Command::WittCheck(a) => {
            let s = a.scheme.merged(cfg);
            witt_check(&s, a.triples.unwrap_or(1_000), a.seed.or(cfg.seed).unwrap_or(0), a.output.as_deref())
        }
        Command::Export(a) => {
            let s = a.scheme.merged(cfg);
            export_cmd(a.what, &s, &a.group, a.format.or(cfg.format), a.output.as_deref())
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                // a closed pipe (`qc ... | head`) is a normal way to stop reading
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => Ok(r?),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// scheme selection
// ---------------------------------------------------------------------------

fn interval_literal(w: &str) -> Option<(&str, &str)> {
    if PathBuf::from(w).exists() {
        return None;
    }
    w.split_once(',')
}

fn parse_golden(s: &str) -> Result<GoldenRat, QcError> {
    s.trim().parse::<GoldenRat>().map_err(QcError::from)
}

pub fn resolve_scheme(a: &SchemeArgs) -> Result<SchemeSpec> {
    let base = a.scheme.as_deref();
    let Some(w) = &a.window else {
        return Ok(preset(base.unwrap_or("fibonacci-palindromic"))?);
    };
    if let Some((lo, hi)) = interval_literal(w) {
        let host = preset(base.unwrap_or("fibonacci"))?;
        if host.lattice.inner_dim() != 1 {
            return Err(QcError::InvalidWindow(format!("an interval window needs a one-dimensional scheme, not {}", host.name)).into());
        }
        let bad = |e: QcError| QcError::InvalidWindow(format!("interval {w:?}: {e}"));
        let lo = parse_golden(lo).map_err(bad)?;
        let hi = parse_golden(hi).map_err(bad)?;
        if lo >= hi {
            return Err(QcError::DegenerateWindow(format!("interval [{lo}, {hi}] has empty interior")).into());
        }
        let window = ConvexWindow::interval(lo.clone(), Boundary::Closed, hi.clone(), Boundary::Closed)?;
        return Ok(SchemeSpec::new(&format!("{}[{lo},{hi}]", host.name), host.kind, host.lattice, window)?);
    }
    let text = std::fs::read_to_string(w).map_err(|e| QcError::InvalidWindow(format!("cannot read {w}: {e}")))?;
    Ok(custom_scheme_from_json(&text)?)
}

fn parse_radius(a: &SchemeArgs) -> Result<Option<GoldenRat>> {
    a.radius
        .as_deref()
        .map(|r| parse_golden(r).with_context(|| format!("invalid radius {r:?}")))
        .transpose()
}

fn radius_or_desk(a: &SchemeArgs, scheme: &SchemeSpec) -> Result<GoldenRat> {
    Ok(parse_radius(a)?.unwrap_or_else(|| verify::desk_radius(scheme)))
}

// ---------------------------------------------------------------------------
// generate / export
// ---------------------------------------------------------------------------

fn render_points(scheme: &SchemeSpec, radius: &GoldenRat, pts: &[QcPoint], fmt: Format) -> Result<String> {
    Ok(match fmt {
        Format::Csv => export::points_csv(scheme.lattice, pts)?,
        Format::Json => export::points_json(scheme, radius, pts)?,
        Format::Svg => export::points_svg(scheme, pts)?,
        Format::Obj => export::points_obj(scheme, pts)?,
        Format::Md => bail!("point sets are exported as csv, json, svg or obj"),
    })
}

fn generate(a: &SchemeArgs, fmt: Format, out: Option<&Path>) -> Result<u8> {
    let scheme = resolve_scheme(a)?;
    let radius = radius_or_desk(a, &scheme)?;
    let pts = scheme.enumerate(&radius)?;
    emit(out, &render_points(&scheme, &radius, &pts, fmt)?)?;
    Ok(0)
}

fn export_cmd(what: ExportWhat, a: &SchemeArgs, group: &str, fmt: Option<Format>, out: Option<&Path>) -> Result<u8> {
    let text = match what {
        ExportWhat::Group => export::group_table_json(&icosian::build_icosian_group())?,
        ExportWhat::Roots => {
            let n = group.trim_start_matches('h').parse::<usize>()?;
            export::roots_csv(&build_delta(n)?)?
        }
        ExportWhat::Hrep => hrep_to_json(&resolve_scheme(a)?.window)?,
        ExportWhat::Points => {
            let scheme = resolve_scheme(a)?;
            let radius = radius_or_desk(a, &scheme)?;
            let pts = scheme.enumerate(&radius)?;
            render_points(&scheme, &radius, &pts, fmt.unwrap_or(Format::Json))?
        }
    };
    emit(out, &text)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

enum GeneratorSpec {
    Range(i64, i64),
    Points(Vec<PointKey>),
}

fn parse_point(s: &str, rank: usize) -> Result<PointKey> {
    let parts: Vec<&str> = s.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
    let ints: Option<Vec<BigInt>> = parts.iter().map(|p| p.parse::<BigInt>().ok()).collect();
    match ints {
        Some(v) if v.len() == 2 * rank => Ok(v.chunks(2).map(|c| GoldenInt::new(c[0].clone(), c[1].clone())).collect()),
        _ if parts.len() == rank => Ok(parts.iter().map(|p| p.parse::<GoldenInt>()).collect::<Result<_, _>>()?),
        _ => bail!("point {s:?} needs {rank} golden coordinates or {} integers", 2 * rank),
    }
}

fn parse_generators(s: &str, rank: usize) -> Result<GeneratorSpec> {
    if let Some((a, b)) = s.split_once("..") {
        if let (Ok(a), Ok(b)) = (a.trim().parse::<i64>(), b.trim().parse::<i64>()) {
            if a > b {
                bail!("empty range {s:?}");
            }
            return Ok(GeneratorSpec::Range(a, b));
        }
    }
    let pts = s.split(';').filter(|p| !p.trim().is_empty()).map(|p| parse_point(p, rank)).collect::<Result<Vec<_>>>()?;
    Ok(GeneratorSpec::Points(pts))
}

fn table(a: &SchemeArgs, rows: &str, cols: &str, fmt: Format, out: Option<&Path>) -> Result<u8> {
    let scheme = resolve_scheme(a)?;
    let rank = scheme.lattice.rank();
    let labelled = scheme.kind == SchemeKind::Fibonacci;
    let mut batch: Option<Vec<QcPoint>> = None;
    let mut expand = |spec: GeneratorSpec| -> Result<(Vec<PointKey>, Option<Vec<i64>>)> {
        match spec {
            GeneratorSpec::Points(p) => Ok((p, None)),
            GeneratorSpec::Range(lo, hi) if labelled => Ok(((lo..=hi).map(|n| vec![fpal(n)]).collect(), Some((lo..=hi).collect()))),
            GeneratorSpec::Range(lo, hi) => {
                if batch.is_none() {
                    batch = Some(scheme.enumerate(&radius_or_desk(a, &scheme)?)?);
                }
                let b = batch.as_ref().expect("just filled");
                let idx = |i: i64| {
                    usize::try_from(i)
                        .ok()
                        .and_then(|i| b.get(i))
                        .map(|p| p.coords.clone())
                        .ok_or_else(|| anyhow!("index {i} outside the batch of {} points", b.len()))
                };
                Ok(((lo..=hi).map(idx).collect::<Result<_>>()?, None))
            }
        }
    };
    let (row_pts, row_labels) = expand(parse_generators(rows, rank)?)?;
    let (col_pts, col_labels) = expand(parse_generators(cols, rank)?)?;
    let alg = JordanAlgebra::new(scheme.clone());
    let label = |k: &[GoldenInt]| match (labelled, k.first().and_then(fpal_label)) {
        (true, Some(n)) => format!("L_{{{n}}}"),
        _ => format!("L{}", fmt_key(k)),
    };
    let t = export::product_table(&alg, &row_pts, &col_pts, label)?;
    let text = match fmt {
        Format::Csv => t.to_csv()?,
        Format::Json => t.to_json()?,
        Format::Md => match (row_labels, col_labels) {
            (Some(r), Some(c)) => match fibonacci_label_table(&alg, &r, &c) {
                Ok(cells) => label_table_markdown(&r, &c, &cells),
                Err(_) => t.to_markdown(),
            },
            _ => t.to_markdown(),
        },
        Format::Svg | Format::Obj => bail!("tables are written as csv, json or md"),
    };
    emit(out, &text)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// symmetry and witt-check
// ---------------------------------------------------------------------------

fn maps_for(scheme: &SchemeSpec, kind: MapKind) -> Vec<LatticeMap> {
    match kind {
        MapKind::Default => verify::scheme_symmetries(scheme),
        MapKind::Identity => vec![LatticeMap::identity(scheme.lattice)],
        MapKind::Negation => vec![LatticeMap::negation(scheme.lattice)],
        MapKind::Xi => vec![LatticeMap::penrose_xi()],
        MapKind::Table => symmetry::icosahedral_table_matrices().into_iter().map(|(_, m)| m).collect(),
        MapKind::Conjugation => icosian::a5_reference_rows().iter().map(|(u, _)| LatticeMap::conjugation(u)).collect(),
    }
}

fn symmetry_cmd(a: &SchemeArgs, kind: MapKind, out: Option<&Path>) -> Result<u8> {
    let scheme = resolve_scheme(a)?;
    let radius = radius_or_desk(a, &scheme)?;
    let pts = scheme.enumerate(&radius)?;
    let mut reports = Vec::new();
    for rho in maps_for(&scheme, kind) {
        if rho.matrix.len() != scheme.lattice.rank() {
            bail!("map {} does not act on the {} lattice", rho.name, scheme.lattice.name());
        }
        reports.push(symmetry::symmetry_transfer_check(&scheme, &rho, &pts)?);
    }
    emit(out, &(serde_json::to_string_pretty(&reports)? + "\n"))?;
    Ok(if reports.iter().any(|r| r.status == TransferStatus::Fail) {
        EXIT_VERIFY_FAILED
    } else if reports.iter().any(|r| r.status == TransferStatus::HypothesisFailure) {
        EXIT_HYPOTHESIS
    } else {
        0
    })
}

fn witt_check(a: &SchemeArgs, triples: usize, seed: u64, out: Option<&Path>) -> Result<u8> {
    let scheme = resolve_scheme(a)?;
    let radius = radius_or_desk(a, &scheme)?;
    let pts = scheme.enumerate(&radius)?;
    let unwindowed = match WittAlgebra::unwindowed(scheme.lattice) {
        Ok(alg) => Some(witt::random_jacobi_suite(&alg, triples, seed)?),
        Err(QcError::Unsupported(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let accept = verify::acceptability_suite(&scheme, &pts)?;
    let failed = unwindowed.as_ref().is_some_and(|r| !r.passed()) || accept.status == SuiteStatus::Fail;
    let report = json!({
        "scheme": scheme.name,
        "radius": radius.to_string(),
        "unwindowed_jacobi": unwindowed,
        "acceptability": accept,
    });
    emit(out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    Ok(if failed { EXIT_VERIFY_FAILED } else { 0 })
}
