//! Affine planes and dual affine planes of prime order.
//!
//! The dual plane is built directly from the algebraic rule that pairs SIC indices with
//! MU-POM points: line `(a, b)` contains `(b, d)` and `(a + j·b mod d, j)` for `j < d`.
//! Points are ordered by `(j, m)` and lines by `(a, b)` everywhere, including exports.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::require_prime;

/// DAPG point `(m, j)`: row `m` in column `j`, `j = d` the computational column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub m: usize,
    pub j: usize,
}

/// DAPG line `μ = (a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Line {
    pub a: usize,
    pub b: usize,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, col {})", self.m, self.j)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Finite incidence structure with labelled points and lines.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Incidence {
    points: Vec<(usize, usize)>,
    lines: Vec<(usize, usize)>,
    /// `members[l]` = sorted point indices on line `l`
    members: Vec<Vec<usize>>,
}

impl Incidence {
    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.points.len()];
        for line in &self.members {
            for &p in line {
                deg[p] += 1;
            }
        }
        deg
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (l, line) in self.members.iter().enumerate() {
            for &p in line {
                out.push((p, l));
            }
        }
        out.sort_unstable();
        out
    }
}

// ---------------------------------------------------------------------------
// Affine plane

/// Affine plane of order `d`: points `(x, y)`, lines `y = a·x + b` (label `(a, b)`) and
/// verticals `x = c` (label `(d, c)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Apg {
    d: usize,
    inc: Incidence,
}

pub fn build_apg(d: usize) -> Result<Apg> {
    require_prime(d)?;
    let points: Vec<(usize, usize)> = (0..d).flat_map(|x| (0..d).map(move |y| (x, y))).collect();
    let idx = |x: usize, y: usize| x * d + y;
    let mut lines = Vec::with_capacity(d * (d + 1));
    let mut members = Vec::with_capacity(d * (d + 1));
    for a in 0..d {
        for b in 0..d {
            lines.push((a, b));
            let mut pts: Vec<usize> = (0..d).map(|x| idx(x, (a * x + b) % d)).collect();
            pts.sort_unstable();
            members.push(pts);
        }
    }
    for c in 0..d {
        lines.push((d, c));
        members.push((0..d).map(|y| idx(c, y)).collect());
    }
    Ok(Apg {
        d,
        inc: Incidence {
            points,
            lines,
            members,
        },
    })
}

impl Apg {
    pub fn order(&self) -> usize {
        self.d
    }

    pub fn num_points(&self) -> usize {
        self.inc.points.len()
    }

    pub fn num_lines(&self) -> usize {
        self.inc.lines.len()
    }

    /// Points `(x, y)` on the line with the given label.
    pub fn line_points(&self, label: (usize, usize)) -> Option<Vec<(usize, usize)>> {
        let l = self.inc.lines.iter().position(|&x| x == label)?;
        Some(
            self.inc.members[l]
                .iter()
                .map(|&p| self.inc.points[p])
                .collect(),
        )
    }

    /// Labels of the lines through both points (exactly one when they are distinct).
    pub fn lines_joining(&self, p: (usize, usize), q: (usize, usize)) -> Vec<(usize, usize)> {
        let pi = p.0 * self.d + p.1;
        let qi = q.0 * self.d + q.1;
        self.inc
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.contains(&pi) && m.contains(&qi))
            .map(|(l, _)| self.inc.lines[l])
            .collect()
    }

    /// Exact check of the affine-plane axioms; returns the list of violations.
    pub fn verify(&self) -> Vec<String> {
        let d = self.d;
        let mut v = Vec::new();
        if self.num_points() != d * d {
            v.push(format!(
                "expected {} points, found {}",
                d * d,
                self.num_points()
            ));
        }
        if self.num_lines() != d * (d + 1) {
            v.push(format!(
                "expected {} lines, found {}",
                d * (d + 1),
                self.num_lines()
            ));
        }
        for (l, m) in self.inc.members.iter().enumerate() {
            if m.len() != d {
                v.push(format!(
                    "line {:?} has {} points",
                    self.inc.lines[l],
                    m.len()
                ));
            }
        }
        for (p, deg) in self.inc.degrees().into_iter().enumerate() {
            if deg != d + 1 {
                v.push(format!(
                    "point {:?} lies on {} lines",
                    self.inc.points[p], deg
                ));
            }
        }
        let n = self.num_points();
        let sets: Vec<BTreeSet<usize>> = self
            .inc
            .members
            .iter()
            .map(|m| m.iter().copied().collect())
            .collect();
        for p in 0..n {
            for q in (p + 1)..n {
                let c = sets
                    .iter()
                    .filter(|s| s.contains(&p) && s.contains(&q))
                    .count();
                if c != 1 {
                    v.push(format!(
                        "points {:?} and {:?} are joined by {} lines",
                        self.inc.points[p], self.inc.points[q], c
                    ));
                }
            }
        }
        // parallel axiom: for P not on L exactly one line through P misses L
        for (l, line) in sets.iter().enumerate() {
            for p in 0..n {
                if line.contains(&p) {
                    continue;
                }
                let c = sets
                    .iter()
                    .filter(|s| s.contains(&p) && s.is_disjoint(line))
                    .count();
                if c != 1 {
                    v.push(format!(
                        "point {:?} has {} parallels to line {:?}",
                        self.inc.points[p], c, self.inc.lines[l]
                    ));
                }
            }
        }
        v
    }
}

// ---------------------------------------------------------------------------
// Dual affine plane

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dapg {
    d: usize,
    inc: Incidence,
}

pub fn build_dapg(d: usize) -> Result<Dapg> {
    require_prime(d)?;
    let lines = (0..d)
        .flat_map(|a| (0..d).map(move |b| Line { a, b }))
        .map(|line| {
            let mut pts: Vec<Point> = (0..d)
                .map(|j| Point {
                    m: (line.a + j * line.b) % d,
                    j,
                })
                .collect();
            pts.push(Point { m: line.b, j: d });
            (line, pts)
        })
        .collect();
    Dapg::from_lines(d, lines)
}

impl Dapg {
    /// Arbitrary structure on the `d(d+1)` point grid; used for imports and negative controls.
    pub fn from_lines(d: usize, lines: Vec<(Line, Vec<Point>)>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invalid("order must be positive".into()));
        }
        let points: Vec<(usize, usize)> =
            (0..=d).flat_map(|j| (0..d).map(move |m| (m, j))).collect();
        let mut labels = Vec::with_capacity(lines.len());
        let mut members = Vec::with_capacity(lines.len());
        for (line, pts) in lines {
            for x in [line.a, line.b] {
                if x >= d {
                    return Err(Error::IndexOutOfRange { index: x, bound: d });
                }
            }
            let mut idx = Vec::with_capacity(pts.len());
            for p in pts {
                idx.push(point_index(d, p)?);
            }
            idx.sort_unstable();
            labels.push((line.a, line.b));
            members.push(idx);
        }
        Ok(Self {
            d,
            inc: Incidence {
                points,
                lines: labels,
                members,
            },
        })
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn num_points(&self) -> usize {
        self.inc.points.len()
    }

    pub fn num_lines(&self) -> usize {
        self.inc.lines.len()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.inc.points.iter().map(|&(m, j)| Point { m, j })
    }

    pub fn lines(&self) -> impl Iterator<Item = Line> + '_ {
        self.inc.lines.iter().map(|&(a, b)| Line { a, b })
    }

    fn line_slot(&self, line: Line) -> Result<usize> {
        for x in [line.a, line.b] {
            if x >= self.d {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    bound: self.d,
                });
            }
        }
        self.inc
            .lines
            .iter()
            .position(|&l| l == (line.a, line.b))
            .ok_or_else(|| Error::Invalid(format!("line {line} not present")))
    }

    /// Points on `line`, ordered by `(j, m)`.
    pub fn points_on(&self, line: Line) -> Result<Vec<Point>> {
        let slot = self.line_slot(line)?;
        Ok(self.inc.members[slot]
            .iter()
            .map(|&p| {
                let (m, j) = self.inc.points[p];
                Point { m, j }
            })
            .collect())
    }

    /// Lines through `point`, ordered by `(a, b)`.
    pub fn lines_through(&self, point: Point) -> Result<Vec<Line>> {
        let p = point_index(self.d, point)?;
        Ok(self
            .inc
            .members
            .iter()
            .zip(&self.inc.lines)
            .filter(|(m, _)| m.binary_search(&p).is_ok())
            .map(|(_, &(a, b))| Line { a, b })
            .collect())
    }

    pub fn contains(&self, line: Line, point: Point) -> bool {
        match (self.line_slot(line), point_index(self.d, point)) {
            (Ok(l), Ok(p)) => self.inc.members[l].binary_search(&p).is_ok(),
            _ => false,
        }
    }
}

/// Row-major slot of a point: `j · d + m`.
pub fn point_index(d: usize, p: Point) -> Result<usize> {
    if p.m >= d {
        return Err(Error::IndexOutOfRange {
            index: p.m,
            bound: d,
        });
    }
    if p.j > d {
        return Err(Error::IndexOutOfRange {
            index: p.j,
            bound: d + 1,
        });
    }
    Ok(p.j * d + p.m)
}

/// Slot of a line: `a · d + b`.
pub fn line_index(d: usize, l: Line) -> usize {
    l.a * d + l.b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    LineSize {
        line: Line,
        size: usize,
    },
    LineColumn {
        line: Line,
        column: usize,
        count: usize,
    },
    PointDegree {
        point: Point,
        degree: usize,
    },
    LinesMeet {
        first: Line,
        second: Line,
        count: usize,
    },
    ColumnConnected {
        first: Point,
        second: Point,
    },
    Count {
        what: &'static str,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LineSize { line, size } => write!(f, "line {line} has {size} points"),
            Violation::LineColumn {
                line,
                column,
                count,
            } => {
                write!(f, "line {line} has {count} points in column {column}")
            }
            Violation::PointDegree { point, degree } => {
                write!(f, "point {point} lies on {degree} lines")
            }
            Violation::LinesMeet {
                first,
                second,
                count,
            } => {
                if *count > 1 {
                    write!(
                        f,
                        "two lines meet in > 1 point: {first} and {second} share {count}"
                    )
                } else {
                    write!(f, "lines {first} and {second} do not meet")
                }
            }
            Violation::ColumnConnected { first, second } => {
                write!(f, "points {first} and {second} in one column share a line")
            }
            Violation::Count {
                what,
                expected,
                found,
            } => {
                write!(f, "expected {expected} {what}, found {found}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct IncidenceReport {
    pub order: usize,
    pub points: usize,
    pub lines: usize,
    pub violations: Vec<Violation>,
}

impl IncidenceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for IncidenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} points, {} lines, ", self.points, self.lines)?;
        if self.passed() {
            write!(f, "all axioms pass")
        } else {
            write!(f, "{} violations", self.violations.len())?;
            for v in &self.violations {
                write!(f, "\n  {v}")?;
            }
            Ok(())
        }
    }
}

/// Exact combinatorial check of the dual-plane axioms.
pub fn verify_incidence(plane: &Dapg) -> IncidenceReport {
    let d = plane.d;
    let inc = &plane.inc;
    let mut v = Vec::new();
    if inc.lines.len() != d * d {
        v.push(Violation::Count {
            what: "lines",
            expected: d * d,
            found: inc.lines.len(),
        });
    }
    let labels: Vec<Line> = plane.lines().collect();
    for (l, members) in inc.members.iter().enumerate() {
        if members.len() != d + 1 {
            v.push(Violation::LineSize {
                line: labels[l],
                size: members.len(),
            });
        }
        let mut per_col = vec![0; d + 1];
        for &p in members {
            per_col[inc.points[p].1] += 1;
        }
        for (column, &count) in per_col.iter().enumerate() {
            if count != 1 {
                v.push(Violation::LineColumn {
                    line: labels[l],
                    column,
                    count,
                });
            }
        }
    }
    for (p, deg) in inc.degrees().into_iter().enumerate() {
        if deg != d {
            let (m, j) = inc.points[p];
            v.push(Violation::PointDegree {
                point: Point { m, j },
                degree: deg,
            });
        }
    }
    for l1 in 0..inc.members.len() {
        for l2 in (l1 + 1)..inc.members.len() {
            let count = intersection_size(&inc.members[l1], &inc.members[l2]);
            if count != 1 {
                v.push(Violation::LinesMeet {
                    first: labels[l1],
                    second: labels[l2],
                    count,
                });
            }
        }
    }
    let mut connected = BTreeSet::new();
    for members in &inc.members {
        for (i, &p) in members.iter().enumerate() {
            for &q in &members[i + 1..] {
                if inc.points[p].1 == inc.points[q].1 {
                    connected.insert((p, q));
                }
            }
        }
    }
    for (p, q) in connected {
        let (m1, j1) = inc.points[p];
        let (m2, j2) = inc.points[q];
        v.push(Violation::ColumnConnected {
            first: Point { m: m1, j: j1 },
            second: Point { m: m2, j: j2 },
        });
    }
    IncidenceReport {
        order: d,
        points: inc.points.len(),
        lines: inc.lines.len(),
        violations: v,
    }
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

// ---------------------------------------------------------------------------
// Export / import

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Self::Dot),
            "json" => Ok(Self::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// Incidence JSON: point and line labels plus `[point_index, line_index]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceJson {
    pub d: usize,
    pub kind: String,
    pub points: Vec<[usize; 2]>,
    pub lines: Vec<[usize; 2]>,
    pub incidence: Vec<[usize; 2]>,
}

fn to_json(d: usize, kind: &str, inc: &Incidence) -> IncidenceJson {
    IncidenceJson {
        d,
        kind: kind.to_string(),
        points: inc.points.iter().map(|&(x, y)| [x, y]).collect(),
        lines: inc.lines.iter().map(|&(x, y)| [x, y]).collect(),
        incidence: inc.pairs().into_iter().map(|(p, l)| [p, l]).collect(),
    }
}

fn to_dot(name: &str, inc: &Incidence, point_prefix: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph {name} {{");
    let _ = writeln!(s, "  node [shape=circle];");
    for (x, y) in &inc.points {
        let _ = writeln!(s, "  {point_prefix}_{x}_{y} [label=\"({x},{y})\"];");
    }
    let _ = writeln!(s, "  node [shape=box];");
    for (a, b) in &inc.lines {
        let _ = writeln!(s, "  l_{a}_{b} [label=\"[{a},{b}]\"];");
    }
    for (p, l) in inc.pairs() {
        let (x, y) = inc.points[p];
        let (a, b) = inc.lines[l];
        let _ = writeln!(s, "  {point_prefix}_{x}_{y} -- l_{a}_{b};");
    }
    s.push_str("}\n");
    s
}

pub fn export_incidence(plane: &Dapg, format: ExportFormat) -> String {
    match format {
        ExportFormat::Json => {
            serde_json::to_string(&to_json(plane.d, "dapg", &plane.inc)).expect("serializable")
        }
        ExportFormat::Dot => to_dot(&format!("dapg_{}", plane.d), &plane.inc, "p"),
    }
}

pub fn export_apg(plane: &Apg, format: ExportFormat) -> String {
    match format {
        ExportFormat::Json => {
            serde_json::to_string(&to_json(plane.d, "apg", &plane.inc)).expect("serializable")
        }
        ExportFormat::Dot => to_dot(&format!("apg_{}", plane.d), &plane.inc, "p"),
    }
}

/// Rebuild a dual plane from its JSON export.
pub fn import_incidence_json(text: &str) -> Result<Dapg> {
    let j: IncidenceJson = serde_json::from_str(text)?;
    if j.kind != "dapg" {
        return Err(Error::Invalid(format!(
            "expected kind 'dapg', found '{}'",
            j.kind
        )));
    }
    let mut lines: Vec<(Line, Vec<Point>)> = j
        .lines
        .iter()
        .map(|&[a, b]| (Line { a, b }, Vec::new()))
        .collect();
    for &[p, l] in &j.incidence {
        let [m, col] = *j.points.get(p).ok_or(Error::IndexOutOfRange {
            index: p,
            bound: j.points.len(),
        })?;
        lines
            .get_mut(l)
            .ok_or(Error::IndexOutOfRange {
                index: l,
                bound: j.lines.len(),
            })?
            .1
            .push(Point { m, j: col });
    }
    Dapg::from_lines(j.d, lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apg_counts() {
        let p2 = build_apg(2).unwrap();
        assert_eq!((p2.num_points(), p2.num_lines()), (4, 6));
        assert!(p2.verify().is_empty());
        let p3 = build_apg(3).unwrap();
        assert_eq!((p3.num_points(), p3.num_lines()), (9, 12));
        assert!(p3.verify().is_empty());
        // parallel classes of size 3: lines with the same slope are disjoint
        for a in 0..=3 {
            let class: Vec<_> = (0..3).map(|b| p3.line_points((a, b)).unwrap()).collect();
            let all: BTreeSet<_> = class.iter().flatten().collect();
            assert_eq!(all.len(), 9);
        }
    }

    #[test]
    fn apg_two_points_one_line() {
        let p = build_apg(5).unwrap();
        assert!(p.verify().is_empty());
        assert_eq!(p.lines_joining((0, 0), (3, 4)).len(), 1);
        assert_eq!(p.lines_joining((2, 1), (2, 4)), vec![(5, 2)]);
    }

    #[test]
    fn dapg_line_example() {
        let p = build_dapg(3).unwrap();
        let pts = p.points_on(Line { a: 1, b: 2 }).unwrap();
        assert_eq!(
            pts,
            vec![
                Point { m: 1, j: 0 },
                Point { m: 0, j: 1 },
                Point { m: 2, j: 2 },
                Point { m: 2, j: 3 },
            ]
        );
        assert_eq!((p.num_points(), p.num_lines()), (12, 9));
    }

    #[test]
    fn dapg_point_on_lines_qubit() {
        let p = build_dapg(2).unwrap();
        let lines = p.lines_through(Point { m: 0, j: 2 }).unwrap();
        assert_eq!(lines, vec![Line { a: 0, b: 0 }, Line { a: 1, b: 0 }]);
    }

    #[test]
    fn dapg_axioms_hold() {
        for d in [2, 3, 5, 7, 11, 13] {
            let report = verify_incidence(&build_dapg(d).unwrap());
            assert!(report.passed(), "d = {d}: {report}");
            assert_eq!((report.points, report.lines), (d * (d + 1), d * d));
        }
        assert!(build_dapg(9).is_err());
    }

    #[test]
    fn duplicated_line_is_flagged() {
        let p = build_dapg(3).unwrap();
        let mut lines: Vec<(Line, Vec<Point>)> =
            p.lines().map(|l| (l, p.points_on(l).unwrap())).collect();
        lines[4].1 = lines[3].1.clone();
        let bad = Dapg::from_lines(3, lines).unwrap();
        let report = verify_incidence(&bad);
        assert!(!report.passed());
        assert!(report
            .violations
            .iter()
            .any(|v| v.to_string().contains("two lines meet in > 1 point")));
    }

    #[test]
    fn lines_through_and_points_on_sizes() {
        let p = build_dapg(5).unwrap();
        for point in p.points() {
            let lines = p.lines_through(point).unwrap();
            assert_eq!(lines.len(), 5);
            for l in lines {
                assert!(p.points_on(l).unwrap().contains(&point));
            }
        }
        assert_eq!(
            build_dapg(3)
                .unwrap()
                .points_on(Line { a: 0, b: 0 })
                .unwrap()
                .len(),
            4
        );
        assert!(p.lines_through(Point { m: 5, j: 0 }).is_err());
        assert!(p.lines_through(Point { m: 0, j: 6 }).is_err());
        assert!(p.points_on(Line { a: 0, b: 5 }).is_err());
    }

    #[test]
    fn column_partitions_lines() {
        let d = 7;
        let p = build_dapg(d).unwrap();
        for j in 0..=d {
            let mut seen = vec![0; d * d];
            for m in 0..d {
                for l in p.lines_through(Point { m, j }).unwrap() {
                    seen[line_index(d, l)] += 1;
                }
            }
            assert!(seen.iter().all(|&c| c == 1), "column {j}");
        }
    }

    #[test]
    fn json_export_counts_and_roundtrip() {
        let p = build_dapg(2).unwrap();
        let text = export_incidence(&p, ExportFormat::Json);
        let j: IncidenceJson = serde_json::from_str(&text).unwrap();
        assert_eq!(
            (j.points.len(), j.lines.len(), j.incidence.len()),
            (6, 4, 12)
        );
        let back = import_incidence_json(&text).unwrap();
        assert_eq!(back, p);
        let p5 = build_dapg(5).unwrap();
        assert_eq!(
            import_incidence_json(&export_incidence(&p5, ExportFormat::Json)).unwrap(),
            p5
        );
    }

    #[test]
    fn dot_export_is_well_formed() {
        let p = build_dapg(3).unwrap();
        let dot = export_incidence(&p, ExportFormat::Dot);
        assert!(dot.starts_with("graph dapg_3 {"));
        assert!(dot.trim_end().ends_with('}'));
        assert_eq!(dot.matches('{').count(), dot.matches('}').count());
        assert_eq!(dot.matches(" -- ").count(), 36);
        assert!(dot.contains("shape=box"));
        // every edge endpoint is a declared node
        let declared: BTreeSet<&str> = dot
            .lines()
            .filter(|l| l.contains("[label="))
            .map(|l| l.split_whitespace().next().unwrap())
            .collect();
        for edge in dot.lines().filter(|l| l.contains(" -- ")) {
            let e = edge.trim().trim_end_matches(';');
            let (a, b) = e.split_once(" -- ").unwrap();
            assert!(declared.contains(a) && declared.contains(b));
        }
    }

    #[test]
    fn unknown_format() {
        assert!(matches!(
            "svg".parse::<ExportFormat>(),
            Err(Error::UnknownFormat(_))
        ));
    }
}
