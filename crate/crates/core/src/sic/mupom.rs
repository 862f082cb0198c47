use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::fmt_g;
use crate::matrix::{hermitian_eigensystem, hs_inner, HermitianOp, Spectrum};
use crate::plane::{line_index, Dapg, Point};

use super::family::{verify_sic, SicFamily};

/// Default SIC tolerance accepted by [`extract_mu_pom`].
pub const SIC_TOL: f64 = 1e-8;

/// The `d(d+1)` probability operators `τ_m^{(j)}` of the SIC, slot `j·d + m`, with spectra.
#[derive(Clone, Debug)]
pub struct MuPomFamily {
    d: usize,
    tau: Vec<HermitianOp>,
    spectra: Vec<Spectrum>,
}

impl MuPomFamily {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn tau(&self, m: usize, j: usize) -> &HermitianOp {
        &self.tau[j * self.d + m]
    }

    pub fn ops(&self) -> &[HermitianOp] {
        &self.tau
    }

    pub fn spectrum(&self, m: usize, j: usize) -> &Spectrum {
        &self.spectra[j * self.d + m]
    }

    /// Max deviation from the overlap table `{2/(d+1) same point; 1/(d+1) same column;
    /// 1/d across columns}`, from `Σ_m τ = 1` per column, and from positivity.
    pub fn verify(&self) -> Result<f64> {
        let d = self.d;
        let df = d as f64;
        let mut dev: f64 = 0.0;
        for (p, a) in self.tau.iter().enumerate() {
            for (q, b) in self.tau.iter().enumerate().skip(p) {
                let target = if p == q {
                    2.0 / (df + 1.0)
                } else if p / d == q / d {
                    1.0 / (df + 1.0)
                } else {
                    1.0 / df
                };
                dev = dev.max((hs_inner(a, b)? - target).abs());
            }
        }
        let id = HermitianOp::identity(d);
        for j in 0..=d {
            let s = HermitianOp::sum(d, &self.tau[j * d..(j + 1) * d]);
            dev = dev.max(s.sub(&id).mat().max_abs());
        }
        for s in &self.spectra {
            dev = dev.max(-s.min());
        }
        Ok(dev)
    }

    pub fn spectra_table(&self) -> SpectraTable {
        spectra_table(self)
    }
}

/// `τ_m^{(j)} = (1/d) Σ_{μ ∋ (m,j)} λ_μ` with `λ_{a,b}` on line `(a, b)`; requires the family
/// to pass [`verify_sic`] within `sic_tol`.
pub fn extract_mu_pom(s: &SicFamily, geom: &Dapg, sic_tol: f64) -> Result<MuPomFamily> {
    let d = s.d();
    if geom.order() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: geom.order(),
        });
    }
    let dev = verify_sic(s)?;
    if dev > sic_tol {
        return Err(Error::Verification {
            what: "SIC overlaps",
            deviation: dev,
            tol: sic_tol,
        });
    }
    let inv = 1.0 / d as f64;
    let mut tau = Vec::with_capacity(d * (d + 1));
    let mut spectra = Vec::with_capacity(d * (d + 1));
    for point in geom.points() {
        let mut acc = HermitianOp::zeros(d);
        for line in geom.lines_through(point)? {
            acc = acc.add(&s.projectors()[line_index(d, line)]);
        }
        let op = acc.scale(inv);
        spectra.push(hermitian_eigensystem(&op)?.spectrum);
        tau.push(op);
    }
    Ok(MuPomFamily { d, tau, spectra })
}

/// Sorted spectra per point, rows ordered `(j, m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectraTable {
    pub d: usize,
    pub rows: Vec<SpectraRow>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectraRow {
    pub point: Point,
    pub values: Vec<f64>,
}

pub fn spectra_table(m: &MuPomFamily) -> SpectraTable {
    let d = m.d;
    let rows = (0..=d)
        .flat_map(|j| (0..d).map(move |mm| Point { m: mm, j }))
        .map(|p| SpectraRow {
            point: p,
            values: m.spectrum(p.m, p.j).values.clone(),
        })
        .collect();
    SpectraTable { d, rows }
}

impl SpectraTable {
    /// CSV with header `m,j,lambda_1,...,lambda_d`, values at 12 significant digits.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let mut header = vec!["m".to_string(), "j".to_string()];
        header.extend((1..=self.d).map(|k| format!("lambda_{k}")));
        wr.write_record(&header)?;
        for row in &self.rows {
            let mut rec = vec![row.point.m.to_string(), row.point.j.to_string()];
            rec.extend(row.values.iter().map(|&v| fmt_g(v)));
            wr.write_record(&rec)?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("utf-8")
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let headers = rd.headers()?.clone();
        if headers.len() < 3 || &headers[0] != "m" || &headers[1] != "j" {
            return Err(Error::Invalid(
                "spectra CSV header must start with m,j".into(),
            ));
        }
        let d = headers.len() - 2;
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let parse_usize = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Invalid(format!("bad index '{s}'")))
            };
            let point = Point {
                m: parse_usize(&rec[0])?,
                j: parse_usize(&rec[1])?,
            };
            let values = rec
                .iter()
                .skip(2)
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Invalid(format!("bad value '{s}'")))
                })
                .collect::<Result<Vec<f64>>>()?;
            if values.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: values.len(),
                });
            }
            rows.push(point_row(point, values, d)?);
        }
        if rows.len() != d * (d + 1) {
            return Err(Error::DimensionMismatch {
                expected: d * (d + 1),
                found: rows.len(),
            });
        }
        rows.sort_by_key(|r| (r.point.j, r.point.m));
        Ok(Self { d, rows })
    }

    /// Rows of column `j`.
    pub fn column(&self, j: usize) -> impl Iterator<Item = &SpectraRow> {
        self.rows.iter().filter(move |r| r.point.j == j)
    }

    /// Entrywise mean spectrum of column `j`.
    pub fn column_mean(&self, j: usize) -> Vec<f64> {
        let mut acc = vec![0.0; self.d];
        let mut n = 0;
        for r in self.column(j) {
            for (a, v) in acc.iter_mut().zip(&r.values) {
                *a += v;
            }
            n += 1;
        }
        acc.iter().map(|a| a / n.max(1) as f64).collect()
    }
}

fn point_row(point: Point, values: Vec<f64>, d: usize) -> Result<SpectraRow> {
    if point.m >= d || point.j > d {
        return Err(Error::Invalid(format!("point {point} out of range")));
    }
    Ok(SpectraRow { point, values })
}

fn max_entry_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColumnReport {
    /// Max entrywise spread within each column, indexed by `j`.
    pub per_column: Vec<f64>,
    pub max_spread: f64,
    pub tol: f64,
}

impl ColumnReport {
    pub fn passed(&self) -> bool {
        self.max_spread <= self.tol
    }
}

/// Within-column spread of the spectra; a report, never an error.
pub fn assert_column_constant(table: &SpectraTable, tol: f64) -> ColumnReport {
    let per_column: Vec<f64> = (0..=table.d)
        .map(|j| {
            let rows: Vec<&SpectraRow> = table.column(j).collect();
            let mut spread: f64 = 0.0;
            for r in &rows {
                spread = spread.max(max_entry_diff(&r.values, &rows[0].values));
            }
            spread
        })
        .collect();
    let max_spread = per_column.iter().copied().fold(0.0, f64::max);
    ColumnReport {
        per_column,
        max_spread,
        tol,
    }
}

/// Columns with matching spectra: `{ "groups": [[j, ...], ...], "spectra": [[...], ...] }`.
/// Groups are ordered by their smallest label, members ascending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grouping {
    pub groups: Vec<Vec<usize>>,
    pub spectra: Vec<Vec<f64>>,
}

impl Grouping {
    /// Group sizes, ascending.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.groups.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    /// Groups as sorted label sets, themselves sorted; for order-free comparison.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut p: Vec<Vec<usize>> = self
            .groups
            .iter()
            .map(|g| {
                let mut g = g.clone();
                g.sort_unstable();
                g
            })
            .collect();
        p.sort();
        p
    }
}

pub fn group_columns_by_spectrum(table: &SpectraTable, tol: f64) -> Grouping {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut spectra: Vec<Vec<f64>> = Vec::new();
    for j in 0..=table.d {
        let mean = table.column_mean(j);
        match spectra.iter().position(|s| max_entry_diff(s, &mean) <= tol) {
            Some(g) => groups[g].push(j),
            None => {
                groups.push(vec![j]);
                spectra.push(mean);
            }
        }
    }
    Grouping { groups, spectra }
}

/// Assignment of reference columns to computed columns.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnMatch {
    /// `mapping[r]` = computed column matched to reference column `r`.
    pub mapping: Vec<usize>,
    pub max_deviation: f64,
}

/// Match reference column spectra (one per column, any labels) against the table's columns
/// up to a relabeling; `None` when no perfect matching within `tol` exists.
pub fn match_columns(
    table: &SpectraTable,
    reference: &[Vec<f64>],
    tol: f64,
) -> Option<ColumnMatch> {
    let n = table.d + 1;
    if reference.len() != n {
        return None;
    }
    let computed: Vec<Vec<f64>> = (0..n).map(|j| table.column_mean(j)).collect();
    let mut sorted_ref: Vec<Vec<f64>> = reference.to_vec();
    for r in &mut sorted_ref {
        r.sort_by(|a, b| b.total_cmp(a));
    }
    let ok = |r: usize, c: usize| {
        sorted_ref[r].len() == computed[c].len()
            && max_entry_diff(&sorted_ref[r], &computed[c]) <= tol
    };
    // bipartite matching by augmenting paths
    let mut owner: Vec<Option<usize>> = vec![None; n];
    fn augment(
        r: usize,
        n: usize,
        ok: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for c in 0..n {
            if ok(r, c) && !seen[c] {
                seen[c] = true;
                if owner[c].is_none_or(|r2| augment(r2, n, ok, seen, owner)) {
                    owner[c] = Some(r);
                    return true;
                }
            }
        }
        false
    }
    for r in 0..n {
        let mut seen = vec![false; n];
        if !augment(r, n, &ok, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut mapping = vec![0; n];
    let mut max_deviation: f64 = 0.0;
    for (c, r) in owner.iter().enumerate() {
        let r = r.expect("perfect matching");
        mapping[r] = c;
        max_deviation = max_deviation.max(max_entry_diff(&sorted_ref[r], &computed[c]));
    }
    Some(ColumnMatch {
        mapping,
        max_deviation,
    })
}

/// Default entrywise tolerance for grouping columns by spectrum.
pub const GROUP_TOL: f64 = 1e-6;
