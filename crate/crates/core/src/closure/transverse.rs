//! Transverse closures of singular braids, and the check that a front can be
//! the projection of a positively transverse singular link.
//!
//! Braid strands run rightward at heights `kH`. Each strand leaves the box on
//! the right, turns up through a small loop (the negative kink), descends to
//! the left under everything, returns along the bottom and climbs back into
//! the box from the left. The closing arc of strand k lives in its own depth
//! slab behind the box, lower strands in front, so the arcs are unlinked.

use crate::braid::{Letter, SingularBraidWord};
use crate::legendrian::{Dot, DotKind, FrontDiagram, FrontStrand, Layering, Pt};

const H: i64 = 8;
const D: i64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A vertical segment pointing down.
    DownwardVertical { strand: usize, segment: usize },
    /// The strand reverses its horizontal direction while moving down.
    DownwardTurn { strand: usize, vertex: usize },
    /// The strand doubles back on itself.
    Cusp { strand: usize, vertex: usize },
    /// A leftward strand passes in front of a rightward one of smaller slope.
    WrongCrossing { at: (i128, i128), scale: i128 },
    /// Same obstruction at a double point.
    WrongDot { dot: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Violation::DownwardVertical { strand, segment } => {
                write!(f, "downward vertical at strand {strand} segment {segment}")
            }
            Violation::DownwardTurn { strand, vertex } => write!(f, "downward turn at strand {strand} vertex {vertex}"),
            Violation::Cusp { strand, vertex } => write!(f, "cusp at strand {strand} vertex {vertex}"),
            Violation::WrongCrossing { at, scale } => {
                write!(f, "wrong-side crossing at ({}, {})", at.0 as f64 / scale as f64, at.1 as f64 / scale as f64)
            }
            Violation::WrongDot { dot } => write!(f, "wrong-side double point {dot}"),
        }
    }
}

/// A front that passed [`forbidden_front_check`], with what was checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransverseWitness {
    pub front: FrontDiagram,
    /// Points where the horizontal direction reverses; all turn upward.
    pub turns: usize,
    /// Crossings between a leftward and a rightward strand; all on the allowed side.
    pub mixed_crossings: usize,
}

impl TransverseWitness {
    pub fn certify(front: FrontDiagram) -> Result<TransverseWitness, Violation> {
        let (turns, mixed_crossings) = check(&front)?;
        Ok(TransverseWitness { front, turns, mixed_crossings })
    }
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

/// Slope of a leftward segment exceeds that of a rightward one.
fn steeper(left: (i64, i64), right: (i64, i64)) -> bool {
    // left.1/left.0 > right.1/right.0 with left.0 < 0 < right.0
    (left.1 as i128) * (right.0 as i128) < (right.1 as i128) * (left.0 as i128)
}

fn check(f: &FrontDiagram) -> Result<(usize, usize), Violation> {
    let mut turns = 0;
    for (s, st) in f.strands.iter().enumerate() {
        let k = st.points.len();
        for i in 0..k {
            let d = st.dir(i);
            if d.0 == 0 && d.1 < 0 {
                return Err(Violation::DownwardVertical { strand: s, segment: i });
            }
            let din = st.dir((i + k - 1) % k);
            let c = cross(din, d);
            if c == 0 && din.0 * d.0 + din.1 * d.1 < 0 {
                return Err(Violation::Cusp { strand: s, vertex: i });
            }
            let right = din.0 > 0 && d.0 < 0;
            let left = din.0 < 0 && d.0 > 0;
            if right || left {
                turns += 1;
                // moving up means turning counterclockwise at a right extreme
                if (right && c <= 0) || (left && c >= 0) {
                    return Err(Violation::DownwardTurn { strand: s, vertex: i });
                }
            }
        }
    }
    let mut mixed = 0;
    for x in f.crossings() {
        let (o, u) = (x.over_dir, x.under_dir);
        if o.0 < 0 && u.0 > 0 {
            mixed += 1;
            if steeper(o, u) {
                return Err(Violation::WrongCrossing { at: x.at, scale: x.scale });
            }
        } else if o.0 > 0 && u.0 < 0 {
            mixed += 1;
        }
    }
    for (i, d) in f.dots.iter().enumerate() {
        let heading = |(s, v): (usize, usize)| f.strands[s].dir(v);
        let (a, b) = (heading(d.a), heading(d.b));
        let pair = if a.0 < 0 && b.0 > 0 {
            Some((a, b))
        } else if b.0 < 0 && a.0 > 0 {
            Some((b, a))
        } else {
            None
        };
        if let Some((l, r)) = pair {
            if !less_steep(l, r) {
                return Err(Violation::WrongDot { dot: i });
            }
        }
    }
    Ok((turns, mixed))
}

/// At a double point both strands share one depth, so the leftward one must be
/// strictly less steep than the rightward one.
fn less_steep(left: (i64, i64), right: (i64, i64)) -> bool {
    // left slope < right slope
    (left.1 as i128) * (right.0 as i128) > (right.1 as i128) * (left.0 as i128)
}

/// `Ok` iff none of the forbidden local pictures occurs.
pub fn forbidden_front_check(f: &FrontDiagram) -> Result<(), Violation> {
    check(f).map(|_| ())
}

/// A piece of a component: points and the depth of the segment leaving each
/// one, except the last point, which starts the next piece.
#[derive(Default)]
struct Piece {
    pts: Vec<Pt>,
    depth: Vec<i64>,
    /// indices into `pts` of double points, with the dot they belong to
    dots: Vec<(usize, usize, bool)>,
}

impl Piece {
    fn to(&mut self, p: Pt, depth: i64) {
        self.depth.push(depth);
        self.pts.push(p);
    }
}

fn closing_arc(k: i64, n: i64, l: i64) -> Piece {
    let y = k * H;
    let x = l + n * H + 8 + 4 * n * (n - k);
    let mut p = Piece { pts: vec![Pt::new(l, y)], ..Piece::default() };
    let slab = 4 * k;
    p.to(Pt::new(x, y), slab - 2);
    p.to(Pt::new(x + 2, y + 2), slab);
    p.to(Pt::new(x, y + 4), slab);
    p.to(Pt::new(x - k * H - 2, -k * H), slab + 1);
    p.to(Pt::new(-4 * k * H, -k * H), slab);
    p.to(Pt::new(0, y), slab);
    p
}

/// Closed-braid front of `w` with a negative kink on every strand.
pub fn transverse_closure(w: &SingularBraidWord) -> FrontDiagram {
    let n = w.strands;
    let mut slots = Vec::new();
    for &l in &w.letters {
        match l {
            Letter::Xi(i) => slots.extend([Letter::Sigma(i), Letter::Tau(i)]),
            _ => slots.push(l),
        }
    }
    let len = D * slots.len() as i64;
    let height = |p: usize| (p as i64 + 1) * H;
    // one piece per start position, running through the box
    let mut threads: Vec<Piece> =
        (0..n).map(|p| Piece { pts: vec![Pt::new(0, height(p))], ..Piece::default() }).collect();
    let mut cur: Vec<usize> = (0..n).collect();
    for (j, &l) in slots.iter().enumerate() {
        let x0 = D * j as i64;
        let lo = l.index() - 1;
        let hi = lo + 1;
        for p in 0..n {
            if p != lo && p != hi {
                threads[cur[p]].to(Pt::new(x0 + D, height(p)), 0);
            }
        }
        let (tl, th) = (cur[lo], cur[hi]);
        match l {
            Letter::Sigma(_) | Letter::SigmaInv(_) => {
                let down_over = matches!(l, Letter::Sigma(_));
                threads[th].to(Pt::new(x0 + D, height(lo)), if down_over { 0 } else { 1 });
                threads[tl].to(Pt::new(x0 + D, height(hi)), if down_over { 1 } else { 0 });
            }
            Letter::Tau(_) => {
                let mid = Pt::new(x0 + D / 2, height(lo) + H / 2);
                for (t, end, first) in [(tl, height(hi), true), (th, height(lo), false)] {
                    threads[t].to(mid, 0);
                    let at = threads[t].pts.len() - 1;
                    threads[t].dots.push((at, j, first));
                    threads[t].to(Pt::new(x0 + D, end), 0);
                }
            }
            Letter::Xi(_) => unreachable!(),
        }
        cur.swap(lo, hi);
    }
    // end position of each thread
    let mut end = vec![0; n];
    for (p, &t) in cur.iter().enumerate() {
        end[t] = p;
    }
    let arcs: Vec<Piece> = (0..n).map(|p| closing_arc(p as i64 + 1, n as i64, len)).collect();
    let mut strands = Vec::new();
    let mut depths = Vec::new();
    let mut dot_ends: std::collections::BTreeMap<usize, [(usize, usize); 2]> = Default::default();
    let mut done = vec![false; n];
    for s in 0..n {
        if done[s] {
            continue;
        }
        let (mut pts, mut dep) = (Vec::new(), Vec::new());
        let mut t = s;
        while !done[t] {
            done[t] = true;
            let th = &threads[t];
            for &(at, j, first) in &th.dots {
                dot_ends.entry(j).or_insert([(0, 0); 2])[if first { 0 } else { 1 }] = (strands.len(), pts.len() + at);
            }
            pts.extend_from_slice(&th.pts[..th.pts.len() - 1]);
            dep.extend_from_slice(&th.depth);
            let arc = &arcs[end[t]];
            pts.extend_from_slice(&arc.pts[..arc.pts.len() - 1]);
            dep.extend_from_slice(&arc.depth);
            t = end[t];
        }
        strands.push(FrontStrand { points: pts });
        depths.push(dep);
    }
    let dots = dot_ends.values().map(|[a, b]| Dot { a: *a, b: *b, kind: DotKind::Transverse }).collect();
    FrontDiagram { strands, dots, layering: Layering::Depth(depths) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{braid_closure_pd, front_pd};
    use crate::oracle::fingerprint;
    use crate::random::random_word;
    use rand::SeedableRng;

    fn word(s: &str) -> SingularBraidWord {
        SingularBraidWord::parse(s).unwrap()
    }

    #[test]
    fn unknot_has_one_kink() {
        let f = transverse_closure(&SingularBraidWord::identity(1));
        assert_eq!(f.strands.len(), 1);
        assert_eq!(f.crossings().len(), 1);
        let w = TransverseWitness::certify(f).unwrap();
        assert_eq!(w.turns, 2);
    }

    #[test]
    fn crossing_count_of_sigma() {
        // one letter, two kinks, and each closing arc of strand 2 passes under
        // strand 1's lead-out and bottom return
        let f = transverse_closure(&word("braid 2\ns1\n"));
        assert_eq!(f.crossings().len(), 5);
        forbidden_front_check(&f).unwrap();
    }

    #[test]
    fn closures_are_transverse_and_match_braid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..150 {
            let w = random_word(&mut rng, 4, 6);
            let f = transverse_closure(&w);
            forbidden_front_check(&f).unwrap_or_else(|v| panic!("{w}: {v}"));
            let want = fingerprint(&braid_closure_pd(&w)).unwrap();
            assert_eq!(fingerprint(&front_pd(&f)).unwrap(), want, "{w}");
        }
    }

    /// Positive push-off of a front without double points: every corner that
    /// turns downward becomes a small upward loop crossing itself.
    fn push_off(f: &FrontDiagram) -> FrontDiagram {
        let strands = f
            .strands
            .iter()
            .map(|st| {
                let k = st.points.len();
                let mut pts = Vec::new();
                for i in 0..k {
                    let p = Pt::new(8 * st.points[i].x, 8 * st.points[i].z);
                    let (din, d) = (st.dir((i + k - 1) % k), st.dir(i));
                    let c = cross(din, d);
                    if din.0 > 0 && d.0 < 0 && c < 0 {
                        pts.extend([Pt::new(p.x + 2, p.z - 2), Pt::new(p.x + 1, p.z + 1)]);
                    } else if din.0 < 0 && d.0 > 0 && c > 0 {
                        pts.extend([Pt::new(p.x - 2, p.z - 2), Pt::new(p.x - 1, p.z + 1)]);
                    } else {
                        pts.push(p);
                    }
                }
                FrontStrand { points: pts }
            })
            .collect();
        FrontDiagram { strands, dots: vec![], layering: Layering::Slope }
    }

    #[test]
    fn push_offs_pass() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut raw_failures = 0;
        for _ in 0..100 {
            let n = rand::Rng::gen_range(&mut rng, 2..=7);
            let g = crate::random::random_grid(&mut rng, n, 0);
            let front = crate::legendrian::to_front(&g);
            raw_failures += forbidden_front_check(&front).is_err() as usize;
            let p = push_off(&front);
            forbidden_front_check(&p).unwrap_or_else(|v| panic!("{}: {v}", g.serialize()));
            let want = fingerprint(&crate::closure::to_pd(&g)).unwrap();
            assert_eq!(fingerprint(&front_pd(&p)).unwrap(), want, "{}", g.serialize());
        }
        assert!(raw_failures > 0);
    }

    #[test]
    fn downward_cusp_is_caught() {
        // a loop turning clockwise at its right end: down, then back left
        let f = FrontDiagram {
            strands: vec![FrontStrand {
                points: vec![Pt::new(0, 0), Pt::new(4, 0), Pt::new(6, -2), Pt::new(4, -4), Pt::new(0, -4)],
            }],
            dots: vec![],
            layering: Layering::Slope,
        };
        assert!(matches!(forbidden_front_check(&f), Err(Violation::DownwardTurn { .. })));
        let cusp = FrontDiagram {
            strands: vec![FrontStrand { points: vec![Pt::new(0, 0), Pt::new(4, 4), Pt::new(0, 0)] }],
            dots: vec![],
            layering: Layering::Slope,
        };
        assert!(forbidden_front_check(&cusp).is_err());
    }
}
