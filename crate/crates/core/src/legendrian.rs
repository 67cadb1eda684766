//! Fronts: the 45 degree picture of a grid, cusps, crossings and tb.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::grid::{Cell, GridDiagram, Orient};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pt {
    pub x: i64,
    pub z: i64,
}

impl Pt {
    pub fn new(x: i64, z: i64) -> Pt {
        Pt { x, z }
    }
}

/// A closed oriented polyline; segment `i` runs from `points[i]` to `points[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontStrand {
    pub points: Vec<Pt>,
}

impl FrontStrand {
    pub fn segment(&self, i: usize) -> (Pt, Pt) {
        (self.points[i], self.points[(i + 1) % self.points.len()])
    }

    pub fn dir(&self, i: usize) -> (i64, i64) {
        let (p, q) = self.segment(i);
        (q.x - p.x, q.z - p.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DotKind {
    /// Two strands tangent at a common point: a cap (arc A) under a cup (arc B).
    Tangent(Orient),
    /// Two strands crossing transversally at a common vertex.
    Transverse,
}

/// A singular point; `a` and `b` are (strand, vertex) on the two passages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dot {
    pub a: (usize, usize),
    pub b: (usize, usize),
    pub kind: DotKind,
}

/// How over and under are decided at a crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layering {
    /// Legendrian rule: the strand with smaller slope is in front.
    Slope,
    /// Explicit depth per strand and segment; smaller is in front.
    Depth(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontDiagram {
    pub strands: Vec<FrontStrand>,
    pub dots: Vec<Dot>,
    pub layering: Layering,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CuspKind {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CrossClass {
    L,
    R,
    U,
    D,
}

/// Position along a strand: segment index plus parameter `num/den` in (0, 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SegPos {
    pub strand: usize,
    pub seg: usize,
    pub num: i128,
    pub den: i128,
}

impl SegPos {
    /// Compare positions on the same strand.
    pub fn cmp_along(&self, o: &SegPos) -> Ordering {
        self.seg.cmp(&o.seg).then((self.num * o.den).cmp(&(o.num * self.den)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrontCrossing {
    pub over: SegPos,
    pub under: SegPos,
    pub over_dir: (i64, i64),
    pub under_dir: (i64, i64),
    /// Location as (x, z) scaled by `scale`.
    pub at: (i128, i128),
    pub scale: i128,
}

impl FrontCrossing {
    pub fn sign(&self) -> i64 {
        let (o, u) = (self.over_dir, self.under_dir);
        if o.0 * u.1 - o.1 * u.0 > 0 {
            1
        } else {
            -1
        }
    }

    pub fn class(&self) -> CrossClass {
        match (self.over_dir.0 > 0, self.under_dir.0 > 0) {
            (true, true) => CrossClass::R,
            (false, false) => CrossClass::L,
            (false, true) => CrossClass::U,
            (true, false) => CrossClass::D,
        }
    }
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

/// Slope comparison for segments that are not vertical: is a < b?
fn slope_less(a: (i64, i64), b: (i64, i64)) -> bool {
    // a.1/a.0 < b.1/b.0
    let (an, ad) = if a.0 < 0 { (-a.1, -a.0) } else { (a.1, a.0) };
    let (bn, bd) = if b.0 < 0 { (-b.1, -b.0) } else { (b.1, b.0) };
    (an as i128) * (bd as i128) < (bn as i128) * (ad as i128)
}

impl FrontDiagram {
    /// Turning points where the horizontal direction reverses.
    pub fn cusps(&self) -> Vec<(usize, usize, CuspKind)> {
        let mut out = Vec::new();
        for (s, st) in self.strands.iter().enumerate() {
            let k = st.points.len();
            for i in 0..k {
                let din = st.dir((i + k - 1) % k);
                let dout = st.dir(i);
                if din.0 > 0 && dout.0 < 0 {
                    out.push((s, i, CuspKind::Right));
                } else if din.0 < 0 && dout.0 > 0 {
                    out.push((s, i, CuspKind::Left));
                }
            }
        }
        out
    }

    fn depth(&self, s: usize, seg: usize) -> Option<i64> {
        match &self.layering {
            Layering::Slope => None,
            Layering::Depth(d) => Some(d[s][seg]),
        }
    }

    /// Transverse intersections in segment interiors.
    pub fn crossings(&self) -> Vec<FrontCrossing> {
        let segs: Vec<(usize, usize, Pt, Pt)> = self
            .strands
            .iter()
            .enumerate()
            .flat_map(|(s, st)| (0..st.points.len()).map(move |i| (s, i, st.segment(i).0, st.segment(i).1)))
            .collect();
        let mut out = Vec::new();
        for (i, &(s1, k1, p1, q1)) in segs.iter().enumerate() {
            for &(s2, k2, p2, q2) in &segs[i + 1..] {
                let d1 = (q1.x - p1.x, q1.z - p1.z);
                let d2 = (q2.x - p2.x, q2.z - p2.z);
                let den = cross(d1, d2);
                if den == 0 {
                    continue;
                }
                let w = (p2.x - p1.x, p2.z - p1.z);
                let (mut t1, mut t2, mut den) = (cross(w, d2), cross(w, d1), den);
                if den < 0 {
                    t1 = -t1;
                    t2 = -t2;
                    den = -den;
                }
                if t1 <= 0 || t1 >= den || t2 <= 0 || t2 >= den {
                    continue;
                }
                let a = SegPos { strand: s1, seg: k1, num: t1, den };
                let b = SegPos { strand: s2, seg: k2, num: t2, den };
                let first_over = match (self.depth(s1, k1), self.depth(s2, k2)) {
                    (Some(x), Some(y)) => x < y,
                    _ => slope_less(d1, d2),
                };
                let at = (p1.x as i128 * den + d1.0 as i128 * t1, p1.z as i128 * den + d1.1 as i128 * t1);
                let (over, under, od, ud) = if first_over { (a, b, d1, d2) } else { (b, a, d2, d1) };
                out.push(FrontCrossing { over, under, over_dir: od, under_dir: ud, at, scale: den });
            }
        }
        out
    }

    pub fn census(&self) -> TbCensus {
        let mut c = TbCensus::default();
        for x in self.crossings() {
            match x.class() {
                CrossClass::L => c.l += 1,
                CrossClass::R => c.r += 1,
                CrossClass::U => c.u += 1,
                CrossClass::D => c.d += 1,
            }
        }
        for d in &self.dots {
            match d.kind {
                DotKind::Tangent(Orient::W) => c.ll += 1,
                DotKind::Tangent(Orient::E) => c.rr += 1,
                DotKind::Tangent(Orient::N) => c.lr += 1,
                DotKind::Tangent(Orient::S) => c.rl += 1,
                DotKind::Transverse => {}
            }
        }
        c.right_cusps = self.cusps().iter().filter(|x| x.2 == CuspKind::Right).count();
        c
    }

    fn bounds(&self) -> (i64, i64, i64, i64) {
        let pts = self.strands.iter().flat_map(|s| s.points.iter());
        let xs = pts.clone().map(|p| p.x);
        let zs = pts.map(|p| p.z);
        (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0), zs.clone().min().unwrap_or(0), zs.max().unwrap_or(0))
    }
}

/// Feature counts entering tb: four crossing classes, four singular classes
/// (first letter is the lower arc's direction) and right cusps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TbCensus {
    pub l: usize,
    pub r: usize,
    pub ll: usize,
    pub rr: usize,
    pub u: usize,
    pub d: usize,
    pub lr: usize,
    pub rl: usize,
    pub right_cusps: usize,
}

impl TbCensus {
    pub fn positives(&self) -> [usize; 4] {
        [self.l, self.r, self.ll, self.rr]
    }

    pub fn negatives(&self) -> [usize; 5] {
        [self.u, self.d, self.lr, self.rl, self.right_cusps]
    }

    pub fn tb(&self) -> i64 {
        self.positives().iter().sum::<usize>() as i64 - self.negatives().iter().sum::<usize>() as i64
    }
}

/// Rotate a grid 45 degrees counterclockwise: cell (r, c) goes to (c - r, c + r).
pub fn to_front(g: &GridDiagram) -> FrontDiagram {
    let mut strands = Vec::new();
    let mut a_end = std::collections::BTreeMap::new();
    let mut b_end = std::collections::BTreeMap::new();
    for (s, circ) in g.trace_strands().iter().enumerate() {
        let mut pts = Vec::new();
        for p in &circ.passages {
            match g.get(p.row, p.col) {
                Some(Cell::Corner(_)) => {}
                Some(Cell::Singular(_)) => {
                    let m = if Orient::arc_of(p.entry) == 0 { &mut a_end } else { &mut b_end };
                    m.insert((p.row, p.col), (s, pts.len()));
                }
                None => continue,
            }
            pts.push(Pt::new(p.col as i64 - p.row as i64, p.col as i64 + p.row as i64));
        }
        strands.push(FrontStrand { points: pts });
    }
    let dots = g
        .cells
        .iter()
        .filter_map(|(k, c)| match c {
            Cell::Singular(o) => Some(Dot { a: a_end[k], b: b_end[k], kind: DotKind::Tangent(*o) }),
            _ => None,
        })
        .collect();
    FrontDiagram { strands, dots, layering: Layering::Slope }
}

pub fn census(g: &GridDiagram) -> TbCensus {
    to_front(g).census()
}

pub fn thurston_bennequin(g: &GridDiagram) -> i64 {
    census(g).tb()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrontFormat {
    Ascii,
    Svg,
}

pub fn render_front(f: &FrontDiagram, format: FrontFormat) -> String {
    match format {
        FrontFormat::Ascii => render_ascii(f),
        FrontFormat::Svg => render_svg(f),
    }
}

/// Half-unit character raster: lattice points at even offsets.
fn render_ascii(f: &FrontDiagram) -> String {
    let (x0, x1, z0, z1) = f.bounds();
    let w = (2 * (x1 - x0) + 1) as usize;
    let h = (2 * (z1 - z0) + 1) as usize;
    let mut canvas = vec![vec![' '; w]; h];
    let mut put = |x2: i64, z2: i64, ch: char| {
        let (c, r) = ((x2 - 2 * x0) as usize, (2 * z1 - z2) as usize);
        let cell = &mut canvas[r][c];
        *cell = match (*cell, ch) {
            (' ', c) => c,
            (a, b) if a == b => a,
            ('/', '\\') | ('\\', '/') | ('-', '|') | ('|', '-') => '+',
            (_, c) => c,
        };
    };
    for st in &f.strands {
        for i in 0..st.points.len() {
            let (p, q) = st.segment(i);
            let (dx, dz) = (q.x - p.x, q.z - p.z);
            let steps = 2 * dx.abs().max(dz.abs());
            let ch = match (dx.signum() * dz.signum(), dx == 0, dz == 0) {
                (_, true, _) => '|',
                (_, _, true) => '-',
                (1, ..) => '/',
                _ => '\\',
            };
            for k in 1..steps {
                let num_x = 2 * p.x * steps + 2 * dx * k;
                let num_z = 2 * p.z * steps + 2 * dz * k;
                if num_x % steps == 0 && num_z % steps == 0 {
                    put(num_x / steps, num_z / steps, ch);
                }
            }
        }
    }
    let mut marks = Vec::new();
    for (s, i, kind) in f.cusps() {
        let p = f.strands[s].points[i];
        marks.push((p, if kind == CuspKind::Left { '<' } else { '>' }));
    }
    for d in &f.dots {
        marks.push((f.strands[d.a.0].points[d.a.1], '*'));
    }
    for (p, ch) in marks {
        canvas[(2 * z1 - 2 * p.z) as usize][(2 * p.x - 2 * x0) as usize] = ch;
    }
    let mut out = String::new();
    for row in canvas {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn render_svg(f: &FrontDiagram) -> String {
    const S: i64 = 20;
    let (x0, x1, z0, z1) = f.bounds();
    let (w, h) = ((x1 - x0 + 2) * S, (z1 - z0 + 2) * S);
    let px = |x: f64| (x - x0 as f64 + 1.0) * S as f64;
    let pz = |z: f64| (z1 as f64 - z + 1.0) * S as f64;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    for st in &f.strands {
        let pts: Vec<String> = st.points.iter().map(|p| format!("{},{}", px(p.x as f64), pz(p.z as f64))).collect();
        let _ = writeln!(out, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#, pts.join(" "));
    }
    for c in f.crossings() {
        let (cx, cz) = (c.at.0 as f64 / c.scale as f64, c.at.1 as f64 / c.scale as f64);
        let (dx, dz) = (c.over_dir.0 as f64, c.over_dir.1 as f64);
        let n = (dx * dx + dz * dz).sqrt() / 0.3;
        let (ax, az, bx, bz) = (px(cx - dx / n), pz(cz - dz / n), px(cx + dx / n), pz(cz + dz / n));
        let _ = writeln!(out, r#"<line x1="{ax}" y1="{az}" x2="{bx}" y2="{bz}" stroke="white" stroke-width="8"/>"#);
        let _ = writeln!(out, r#"<line x1="{ax}" y1="{az}" x2="{bx}" y2="{bz}" stroke="black" stroke-width="2"/>"#);
    }
    for d in &f.dots {
        let p = f.strands[d.a.0].points[d.a.1];
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="4" fill="black"/>"#, px(p.x as f64), pz(p.z as f64));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNKNOT: &str = "grid 2\nse+ sw-\nne- nw+\n";

    #[test]
    fn unknot_front() {
        let g = GridDiagram::parse(UNKNOT).unwrap();
        let f = to_front(&g);
        let cusps = f.cusps();
        assert_eq!(cusps.iter().filter(|c| c.2 == CuspKind::Left).count(), 1);
        assert_eq!(cusps.iter().filter(|c| c.2 == CuspKind::Right).count(), 1);
        assert!(f.crossings().is_empty());
        assert_eq!(thurston_bennequin(&g), -1);
        let art = render_front(&f, FrontFormat::Ascii);
        assert_eq!(art, render_front(&f, FrontFormat::Ascii));
        assert!(art.contains('<') && art.contains('>'));
    }

    #[test]
    fn crossing_census_matches_grid() {
        let g = GridDiagram::parse("grid 3\n. se- sw+\nse+ . nw-\nne- nw+ .\n").unwrap();
        let f = to_front(&g);
        let xs = f.crossings();
        assert_eq!(xs.len(), g.derive_tiling().crossing_count());
        let signs: Vec<i64> = xs.iter().map(|x| x.sign()).collect();
        let grid_signs: Vec<i64> = g.crossings().iter().map(|x| x.sign()).collect();
        assert_eq!(signs, grid_signs);
    }
}
