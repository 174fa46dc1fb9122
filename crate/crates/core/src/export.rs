//! File formats: point sets (CSV, JSON, SVG, OBJ), the icosian group table,
//! root lists, and Jordan multiplication tables.
//!
//! Exact values are always the primary columns; `*_f64` columns exist for
//! plotting only and are ignored by the parsers.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, JordanAlgebra};
use crate::error::{ParseError, QcError, Result};
use crate::golden::{GoldenInt, GoldenRat};
use crate::icosian::IcosianGroupTable;
use crate::linalg::Vector;
use crate::roots::RootSystem;
use crate::scheme::{fmt_key, LatticeKind, PointKey, QcPoint, SchemeSpec};

pub const POINTS_FORMAT: &str = "quasijordan.points/1";
pub const GROUP_FORMAT: &str = "quasijordan.group/1";
pub const TABLE_FORMAT: &str = "quasijordan.table/1";

fn record_err(msg: impl Into<String>) -> QcError {
    ParseError::Record(msg.into()).into()
}

fn float(x: f64) -> String {
    // normalise −0 so that identical point sets render byte-identically
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.12}")
}

/// Integer columns of a point: `a, b` per coordinate `a + bτ` (half-numerators
/// on the icosian lattices).
pub fn integral_columns(coords: &[GoldenInt]) -> Vec<BigInt> {
    coords.iter().flat_map(|c| [c.a.clone(), c.b.clone()]).collect()
}

fn from_integral_columns(cols: &[BigInt]) -> PointKey {
    cols.chunks(2).map(|p| GoldenInt::new(p[0].clone(), p[1].clone())).collect()
}

/// Rebuilds a point from its integer columns, checking lattice membership
/// and, when given, the recorded star image.
fn rebuild(lattice: LatticeKind, ints: &[BigInt], star: Option<&[GoldenRat]>) -> Result<QcPoint> {
    let coords = from_integral_columns(ints);
    if !lattice.contains(&coords) {
        return Err(record_err(format!("{} is not a {} lattice point", fmt_key(&coords), lattice.name())));
    }
    let computed = lattice.star_map(&coords);
    if let Some(s) = star {
        if s != computed.as_slice() {
            return Err(record_err(format!("star column disagrees with coordinates at {}", fmt_key(&coords))));
        }
    }
    Ok(QcPoint { coords, star: computed })
}

// ---------------------------------------------------------------------------
// points: CSV
// ---------------------------------------------------------------------------

pub fn points_csv_header(lattice: LatticeKind) -> Vec<String> {
    let mut h = vec!["index".to_string()];
    for i in 0..lattice.rank() {
        h.push(format!("c{i}_a"));
        h.push(format!("c{i}_b"));
    }
    h.extend((0..lattice.inner_dim()).map(|i| format!("star{i}")));
    h.extend((0..lattice.physical_dim()).map(|i| format!("x{i}_f64")));
    h
}

/// One row per point: index, integer coordinates, exact star image, and
/// floating physical coordinates.
pub fn points_csv(lattice: LatticeKind, points: &[QcPoint]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| record_err(e.to_string());
    w.write_record(points_csv_header(lattice)).map_err(csv_err)?;
    for (i, p) in points.iter().enumerate() {
        let mut row = vec![i.to_string()];
        row.extend(integral_columns(&p.coords).iter().map(ToString::to_string));
        row.extend(p.star.iter().map(ToString::to_string));
        row.extend(lattice.physical_f64(&p.coords).into_iter().map(float));
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| record_err(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| record_err(e.to_string()))
}

pub fn parse_points_csv(lattice: LatticeKind, text: &str) -> Result<Vec<QcPoint>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r
        .headers()
        .map_err(|e| record_err(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if header != points_csv_header(lattice) {
        return Err(record_err(format!("header does not match the {} lattice layout", lattice.name())));
    }
    let n_int = 2 * lattice.rank();
    let n_star = lattice.inner_dim();
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| record_err(e.to_string()))?;
        let ints: Vec<BigInt> = (1..=n_int)
            .map(|i| rec[i].parse::<BigInt>().map_err(|_| record_err(format!("bad integer {:?}", &rec[i]))))
            .collect::<Result<_>>()?;
        let star: Vec<GoldenRat> = (n_int + 1..=n_int + n_star)
            .map(|i| rec[i].parse::<GoldenRat>().map_err(QcError::from))
            .collect::<Result<_>>()?;
        out.push(rebuild(lattice, &ints, Some(&star))?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// points: JSON
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PointsFile {
    pub format: String,
    pub scheme: String,
    pub lattice: LatticeKind,
    pub radius: String,
    pub count: usize,
    pub points: Vec<PointRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PointRecord {
    /// Canonical `a+b*tau` text per coordinate.
    pub coords: Vec<String>,
    /// The same coordinates as decimal integer strings, two per coordinate.
    pub integral: Vec<String>,
    /// Exact inner image, `p+q*sqrt5` per component.
    pub star: Vec<String>,
    pub physical_f64: Vec<f64>,
    pub star_f64: Vec<f64>,
}

pub fn points_file(scheme: &SchemeSpec, radius: &GoldenRat, points: &[QcPoint]) -> PointsFile {
    let lat = scheme.lattice;
    PointsFile {
        format: POINTS_FORMAT.to_string(),
        scheme: scheme.name.clone(),
        lattice: lat,
        radius: radius.to_string(),
        count: points.len(),
        points: points
            .iter()
            .map(|p| PointRecord {
                coords: p.coords.iter().map(ToString::to_string).collect(),
                integral: integral_columns(&p.coords).iter().map(ToString::to_string).collect(),
                star: p.star.iter().map(ToString::to_string).collect(),
                physical_f64: lat.physical_f64(&p.coords),
                star_f64: p.star.iter().map(GoldenRat::to_f64).collect(),
            })
            .collect(),
    }
}

pub fn points_json(scheme: &SchemeSpec, radius: &GoldenRat, points: &[QcPoint]) -> Result<String> {
    Ok(serde_json::to_string_pretty(&points_file(scheme, radius, points))? + "\n")
}

/// Parses a points file back to exact points. The `coords` and `integral`
/// fields must agree, and `star` must match the recomputed image.
pub fn parse_points_json(text: &str) -> Result<(PointsFile, Vec<QcPoint>)> {
    let file: PointsFile = serde_json::from_str(text)?;
    if file.format != POINTS_FORMAT {
        return Err(record_err(format!("unsupported format {:?}", file.format)));
    }
    if file.count != file.points.len() {
        return Err(record_err("count does not match the number of points"));
    }
    let lat = file.lattice;
    let mut out = Vec::with_capacity(file.points.len());
    for rec in &file.points {
        let coords: PointKey = rec.coords.iter().map(|s| s.parse::<GoldenInt>()).collect::<Result<_, _>>()?;
        let ints: Vec<BigInt> = rec
            .integral
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|_| record_err(format!("bad integer {s:?}"))))
            .collect::<Result<_>>()?;
        if coords.len() != lat.rank() || ints != integral_columns(&coords) {
            return Err(record_err(format!("integral field disagrees with coords {}", fmt_key(&coords))));
        }
        let star: Vec<GoldenRat> = rec.star.iter().map(|s| s.parse::<GoldenRat>()).collect::<Result<_, _>>()?;
        out.push(rebuild(lat, &ints, Some(&star))?);
    }
    Ok((file, out))
}

// ---------------------------------------------------------------------------
// points: SVG and OBJ
// ---------------------------------------------------------------------------

/// Static SVG of a one- or two-dimensional point set. Chain points are
/// drawn on a horizontal line.
pub fn points_svg(scheme: &SchemeSpec, points: &[QcPoint]) -> Result<String> {
    let lat = scheme.lattice;
    if lat.physical_dim() > 2 {
        return Err(QcError::Unsupported(format!("SVG needs a 1D or 2D scheme, {} is {}D", scheme.name, lat.physical_dim())));
    }
    let xy: Vec<(f64, f64)> = points
        .iter()
        .map(|p| {
            let v = lat.physical_f64(&p.coords);
            (v[0], -v.get(1).copied().unwrap_or(0.0))
        })
        .collect();
    let extent = xy.iter().fold(1.0f64, |m, (x, y)| m.max(x.abs()).max(y.abs())) + 1.0;
    let dot = 0.12;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="800">"#,
        float(-extent),
        float(-extent),
        float(2.0 * extent),
        float(2.0 * extent)
    );
    let _ = writeln!(s, "<title>{} ({} points)</title>", scheme.name, points.len());
    if lat.physical_dim() == 1 {
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="0" x2="{}" y2="0" stroke="gray" stroke-width="0.02"/>"#,
            float(-extent),
            float(extent)
        );
    }
    let _ = writeln!(s, r#"<g fill="black">"#);
    for (x, y) in xy {
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{dot}"/>"#, float(x), float(y));
    }
    s += "</g>\n</svg>\n";
    Ok(s)
}

/// Wavefront OBJ vertex list of a three-dimensional point set.
pub fn points_obj(scheme: &SchemeSpec, points: &[QcPoint]) -> Result<String> {
    let lat = scheme.lattice;
    if lat.physical_dim() != 3 {
        return Err(QcError::Unsupported(format!("OBJ needs a 3D scheme, {} is {}D", scheme.name, lat.physical_dim())));
    }
    let mut s = format!("# {POINTS_FORMAT}\n# scheme {}\n# count {}\n", scheme.name, points.len());
    for p in points {
        let v = lat.physical_f64(&p.coords);
        let _ = writeln!(s, "v {} {} {}", float(v[0]), float(v[1]), float(v[2]));
    }
    Ok(s)
}

/// Number of `v` records in an OBJ file.
pub fn obj_vertex_count(text: &str) -> usize {
    text.lines().filter(|l| l.starts_with("v ")).count()
}

// ---------------------------------------------------------------------------
// icosian group and roots
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct GroupElementRecord {
    index: usize,
    components: Vec<String>,
    a5: String,
}

#[derive(Serialize)]
struct GroupFile<'a> {
    format: &'a str,
    order: usize,
    elements: Vec<GroupElementRecord>,
    product: &'a [Vec<usize>],
}

pub fn group_table_json(table: &IcosianGroupTable) -> Result<String> {
    let file = GroupFile {
        format: GROUP_FORMAT,
        order: table.elements.len(),
        elements: table
            .elements
            .iter()
            .zip(&table.a5_image)
            .enumerate()
            .map(|(index, (x, p))| GroupElementRecord {
                index,
                components: x.components().iter().map(ToString::to_string).collect(),
                a5: p.to_cycles(),
            })
            .collect(),
        product: &table.product_index,
    };
    Ok(serde_json::to_string_pretty(&file)? + "\n")
}

pub fn roots_csv(system: &RootSystem) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| record_err(e.to_string());
    let mut header = vec!["system".to_string(), "index".to_string()];
    header.extend((0..system.ambient_dim()).map(|i| format!("x{i}")));
    w.write_record(&header).map_err(csv_err)?;
    for (i, r) in system.roots.iter().enumerate() {
        let mut row = vec![system.name.clone(), i.to_string()];
        row.extend(r.iter().map(ToString::to_string));
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| record_err(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| record_err(e.to_string()))
}

pub fn parse_roots_csv(text: &str) -> Result<Vec<Vector>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records()
        .map(|rec| {
            let rec = rec.map_err(|e| record_err(e.to_string()))?;
            rec.iter().skip(2).map(|s| s.parse::<GoldenRat>().map_err(QcError::from)).collect()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Jordan multiplication tables
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct ProductTable {
    pub format: String,
    pub scheme: String,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    #[serde(skip)]
    pub rows: Vec<PointKey>,
    #[serde(skip)]
    pub cols: Vec<PointKey>,
    pub cells: Vec<Vec<AlgebraElement>>,
}

/// `L_r ∘ L_c` for every row and column generator. Fails with
/// `NotInModelSet` if any requested generator is outside the model set.
pub fn product_table(alg: &JordanAlgebra, rows: &[PointKey], cols: &[PointKey], label: impl Fn(&[GoldenInt]) -> String) -> Result<ProductTable> {
    for k in rows.iter().chain(cols) {
        alg.generator(k)?;
    }
    let cells = rows
        .iter()
        .map(|x| cols.iter().map(|y| alg.product_generators(x, y)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(ProductTable {
        format: TABLE_FORMAT.to_string(),
        scheme: alg.scheme.name.clone(),
        row_labels: rows.iter().map(|k| label(k)).collect(),
        col_labels: cols.iter().map(|k| label(k)).collect(),
        rows: rows.to_vec(),
        cols: cols.to_vec(),
        cells,
    })
}

impl ProductTable {
    /// Long form: one line per cell and support point.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| record_err(e.to_string());
        w.write_record(["row", "col", "point", "coefficient"]).map_err(csv_err)?;
        for (i, row) in self.cells.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                for (k, c) in cell.terms() {
                    w.write_record([&self.row_labels[i], &self.col_labels[j], &fmt_key(k), &c.to_string()])
                        .map_err(csv_err)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| record_err(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| record_err(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from("| ∘ |");
        for c in &self.col_labels {
            let _ = write!(s, " {c} |");
        }
        s += "\n|---|";
        s += &"---|".repeat(self.col_labels.len());
        s += "\n";
        for (label, row) in self.row_labels.iter().zip(&self.cells) {
            let _ = write!(s, "| {label} |");
            for cell in row {
                let _ = write!(s, " {cell} |");
            }
            s += "\n";
        }
        s
    }
}
