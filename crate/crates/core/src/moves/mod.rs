//! Moves on singular grid diagrams.
//!
//! Every move has a literal form used by the command line and in search
//! witnesses: `trH:k`, `trV:k`, `cmH:i`, `cmV:i`, `stab:NE:r,c:v`,
//! `destab:NE:r,c:v`, `rot+:r,c`, `rot-:r,c`, `unrot+:r,c`, `unrot-:r,c`,
//! `swirl:r,c`, `unswirl:r,c` and `flype:r,c:r2,c2` (tile, then crossing).
//! H acts on columns and V on rows.

pub mod lines;
pub mod local;
pub mod patch;
pub mod stabilize;

use std::fmt;
use std::str::FromStr;

use crate::grid::{Cell, GridDiagram, Orient};

pub use lines::{commute, decompose_admissible_h, decompose_admissible_v, interleaving, translate, Axis, IntervalSet, LineError};
pub use local::{flype, flype_partners, rotate, rotated, swirl, unrotate, unswirl};
pub use patch::Patch;
pub use stabilize::{destabilize, destabilizations, stabilizations, stabilize, StabKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Translate { axis: Axis, k: usize },
    Commute { axis: Axis, i: usize },
    Stab { kind: StabKind, r: usize, c: usize, variant: usize },
    Destab { kind: StabKind, r: usize, c: usize, variant: usize },
    /// Quarter turn of the tile at `(r, c)`.
    Rot { plus: bool, r: usize, c: usize },
    /// Undo of a rotation whose block starts at `(r, c)`.
    Unrot { plus: bool, r: usize, c: usize },
    Swirl { r: usize, c: usize },
    Unswirl { r: usize, c: usize },
    Flype { r: usize, c: usize, x: (usize, usize) },
}

/// Move families, as used to define the equivalence categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Translate,
    Commute,
    Stab(StabKind),
    /// A rotation and whether it is one of the starred ones (from S by a
    /// positive turn or from N by a negative one, landing on E, or the undo).
    Rot { starred: bool },
    Swirl,
    Flype,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveError {
    Parse(String),
    NotApplicable(String),
    Line(LineError),
}

impl fmt::Display for MoveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveError::Parse(s) => write!(f, "bad move literal: {s}"),
            MoveError::NotApplicable(s) => write!(f, "move not applicable: {s}"),
            MoveError::Line(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MoveError {}

impl From<LineError> for MoveError {
    fn from(e: LineError) -> Self {
        MoveError::Line(e)
    }
}

fn axis_letter(a: Axis) -> char {
    match a {
        Axis::H => 'H',
        Axis::V => 'V',
    }
}

fn sign(plus: bool) -> char {
    if plus {
        '+'
    } else {
        '-'
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::Translate { axis, k } => write!(f, "tr{}:{k}", axis_letter(axis)),
            Move::Commute { axis, i } => write!(f, "cm{}:{i}", axis_letter(axis)),
            Move::Stab { kind, r, c, variant } => write!(f, "stab:{kind}:{r},{c}:{variant}"),
            Move::Destab { kind, r, c, variant } => write!(f, "destab:{kind}:{r},{c}:{variant}"),
            Move::Rot { plus, r, c } => write!(f, "rot{}:{r},{c}", sign(plus)),
            Move::Unrot { plus, r, c } => write!(f, "unrot{}:{r},{c}", sign(plus)),
            Move::Swirl { r, c } => write!(f, "swirl:{r},{c}"),
            Move::Unswirl { r, c } => write!(f, "unswirl:{r},{c}"),
            Move::Flype { r, c, x } => write!(f, "flype:{r},{c}:{},{}", x.0, x.1),
        }
    }
}

fn cell(s: &str) -> Result<(usize, usize), MoveError> {
    let bad = || MoveError::Parse(format!("expected r,c but found '{s}'"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn number(s: &str) -> Result<usize, MoveError> {
    s.trim().parse().map_err(|_| MoveError::Parse(format!("expected a number but found '{s}'")))
}

impl FromStr for Move {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Move, MoveError> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || MoveError::Parse(s.to_string());
        let axis = |name: &str| match name.chars().last() {
            Some('H') | Some('h') => Ok(Axis::H),
            Some('V') | Some('v') => Ok(Axis::V),
            _ => Err(bad()),
        };
        match parts.as_slice() {
            [name, k] if name.starts_with("tr") && name.len() == 3 => Ok(Move::Translate { axis: axis(name)?, k: number(k)? }),
            [name, i] if name.starts_with("cm") && name.len() == 3 => Ok(Move::Commute { axis: axis(name)?, i: number(i)? }),
            [name, kind, at, variant] if *name == "stab" || *name == "destab" => {
                let kind: StabKind = kind.parse().map_err(MoveError::Parse)?;
                let (r, c) = cell(at)?;
                let variant = number(variant)?;
                Ok(if *name == "stab" { Move::Stab { kind, r, c, variant } } else { Move::Destab { kind, r, c, variant } })
            }
            [name, kind, at] if *name == "stab" || *name == "destab" => Move::from_str(&format!("{name}:{kind}:{at}:0")),
            [name, at] => {
                let (r, c) = cell(at)?;
                match *name {
                    "rot+" => Ok(Move::Rot { plus: true, r, c }),
                    "rot-" => Ok(Move::Rot { plus: false, r, c }),
                    "unrot+" => Ok(Move::Unrot { plus: true, r, c }),
                    "unrot-" => Ok(Move::Unrot { plus: false, r, c }),
                    "swirl" => Ok(Move::Swirl { r, c }),
                    "unswirl" => Ok(Move::Unswirl { r, c }),
                    // the crossing is filled in when the move is applied
                    "flype" => Ok(Move::Flype { r, c, x: (0, 0) }),
                    _ => Err(bad()),
                }
            }
            ["flype", at, x] => {
                let (r, c) = cell(at)?;
                Ok(Move::Flype { r, c, x: cell(x)? })
            }
            _ => Err(bad()),
        }
    }
}

fn orient_at(g: &GridDiagram, r: usize, c: usize) -> Option<Orient> {
    match g.get(r, c) {
        Some(Cell::Singular(o)) => Some(o),
        _ => None,
    }
}

impl Move {
    /// Fills in a flype's crossing when it was left out and only one fits.
    pub fn resolve(self, g: &GridDiagram) -> Result<Move, MoveError> {
        match self {
            Move::Flype { r, c, x: (0, 0) } => match flype_partners(g, r, c).as_slice() {
                [x] => Ok(Move::Flype { r, c, x: *x }),
                [] => Err(MoveError::NotApplicable(format!("no flype at {r},{c}"))),
                _ => Err(MoveError::Parse(format!("flype at {r},{c} needs the crossing, as flype:{r},{c}:r2,c2"))),
            },
            m => Ok(m),
        }
    }

    pub fn apply(&self, g: &GridDiagram) -> Result<GridDiagram, MoveError> {
        let m = self.resolve(g)?;
        let na = || MoveError::NotApplicable(m.to_string());
        match m {
            Move::Translate { axis, k } => Ok(translate(g, axis, k)?),
            Move::Commute { axis, i } => Ok(commute(g, axis, i)?),
            Move::Stab { kind, r, c, variant } => stabilize(g, kind, r, c, variant).ok_or_else(na),
            Move::Destab { kind, r, c, variant } => destabilize(g, kind, r, c, variant).ok_or_else(na),
            Move::Rot { plus, r, c } => rotate(g, r, c, plus).ok_or_else(na),
            Move::Unrot { plus, r, c } => unrotate(g, r, c, plus).ok_or_else(na),
            Move::Swirl { r, c } => swirl(g, r, c).ok_or_else(na),
            Move::Unswirl { r, c } => unswirl(g, r, c).ok_or_else(na),
            Move::Flype { r, c, x } => flype(g, r, c, x).ok_or_else(na),
        }
    }

    /// The move undoing this one, given the diagram it is applied to.
    pub fn inverse(&self, g: &GridDiagram) -> Move {
        match *self {
            Move::Translate { axis, k } => Move::Translate { axis, k: g.n - k },
            Move::Commute { axis, i } => Move::Commute { axis, i },
            Move::Stab { kind, r, c, variant } => Move::Destab { kind, r, c, variant },
            Move::Destab { kind, r, c, variant } => Move::Stab { kind, r, c, variant },
            Move::Rot { plus, r, c } => Move::Unrot { plus, r, c },
            Move::Unrot { plus, r, c } => Move::Rot { plus, r, c },
            Move::Swirl { r, c } => Move::Unswirl { r, c },
            Move::Unswirl { r, c } => Move::Swirl { r, c },
            Move::Flype { r, c, x } => Move::Flype { r: x.0, c: x.1, x: (r, c) },
        }
    }

    /// The move's family; rotations need the diagram they act on to tell
    /// whether they are starred.
    pub fn family(&self, g: &GridDiagram) -> Family {
        match *self {
            Move::Translate { .. } => Family::Translate,
            Move::Commute { .. } => Family::Commute,
            Move::Stab { kind, .. } | Move::Destab { kind, .. } => Family::Stab(kind),
            Move::Rot { plus, r, c } => {
                let from = if plus { Orient::S } else { Orient::N };
                Family::Rot { starred: orient_at(g, r, c) == Some(from) }
            }
            Move::Unrot { plus, r, c } => {
                let (tr, tc) = local::rotated_tile(r, c, plus);
                Family::Rot { starred: orient_at(g, tr, tc) == Some(Orient::E) }
            }
            Move::Swirl { .. } | Move::Unswirl { .. } => Family::Swirl,
            Move::Flype { .. } => Family::Flype,
        }
    }
}

/// Every move applicable to `g`, with its result.
pub fn successors(g: &GridDiagram) -> Vec<(Move, GridDiagram)> {
    successors_in(g, |_| true)
}

/// Applicable moves whose family passes `allowed`, with their results.
pub fn successors_in(g: &GridDiagram, allowed: impl Fn(Family) -> bool) -> Vec<(Move, GridDiagram)> {
    let mut out = Vec::new();
    if allowed(Family::Translate) {
        for axis in [Axis::H, Axis::V] {
            for k in 1..g.n {
                if let Ok(h) = translate(g, axis, k) {
                    out.push((Move::Translate { axis, k }, h));
                }
            }
        }
    }
    if allowed(Family::Commute) {
        for axis in [Axis::H, Axis::V] {
            for i in 1..g.n {
                if let Ok(h) = commute(g, axis, i) {
                    out.push((Move::Commute { axis, i }, h));
                }
            }
        }
    }
    if StabKind::ALL.iter().any(|&k| allowed(Family::Stab(k))) {
        for (kind, r, c, variant, h) in stabilizations(g) {
            if allowed(Family::Stab(kind)) {
                out.push((Move::Stab { kind, r, c, variant }, h));
            }
        }
        for (kind, r, c, variant, h) in destabilizations(g) {
            if allowed(Family::Stab(kind)) {
                out.push((Move::Destab { kind, r, c, variant }, h));
            }
        }
    }
    let mut local = Vec::new();
    for (r, c) in g.singular_cells() {
        for plus in [true, false] {
            local.push(Move::Rot { plus, r, c });
        }
        local.push(Move::Swirl { r, c });
        for x in flype_partners(g, r, c) {
            local.push(Move::Flype { r, c, x });
        }
    }
    if g.n >= 5 && !g.singular_cells().is_empty() {
        for r in 1..=g.n - 3 {
            for c in 1..=g.n - 3 {
                for plus in [true, false] {
                    local.push(Move::Unrot { plus, r, c });
                }
                local.push(Move::Unswirl { r, c });
            }
        }
    }
    for m in local {
        if allowed(m.family(g)) {
            if let Ok(h) = m.apply(g) {
                out.push((m, h));
            }
        }
    }
    out
}

/// Literal forms of the applicable moves whose family is in `allowed`.
pub fn enumerate_moves(g: &GridDiagram, allowed: &[Family]) -> Vec<Move> {
    successors_in(g, |f| allowed.contains(&f)).into_iter().map(|(m, _)| m).collect()
}

/// Every family, for callers that want all moves.
pub fn all_families() -> Vec<Family> {
    let mut out = vec![Family::Translate, Family::Commute, Family::Swirl, Family::Flype];
    out.extend(StabKind::ALL.iter().map(|&k| Family::Stab(k)));
    out.push(Family::Rot { starred: true });
    out.push(Family::Rot { starred: false });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip() {
        for s in ["trH:3", "cmV:5", "stab:NE:2,3:1", "destab:SW:1,1:0", "rot+:2,2", "unrot-:1,4", "swirl:3,3", "unswirl:1,1", "flype:2,3:3,2"] {
            let m: Move = s.parse().unwrap();
            assert_eq!(m.to_string(), s);
        }
        assert!("rot*:1,1".parse::<Move>().is_err());
        assert!("trX:1".parse::<Move>().is_err());
    }

    #[test]
    fn unknot_successors_apply() {
        let g = GridDiagram::parse("grid 2\nse+ sw-\nne- nw+\n").unwrap();
        let succ = successors(&g);
        let stabs = succ.iter().filter(|(m, _)| matches!(m, Move::Stab { .. })).count();
        let trs = succ.iter().filter(|(m, _)| matches!(m, Move::Translate { .. })).count();
        assert_eq!((stabs, trs, succ.len()), (16, 2, 18));
        for (m, h) in succ {
            assert_eq!(m.apply(&g).unwrap(), h);
            assert_eq!(m.inverse(&g).apply(&h).unwrap(), g);
            assert!(h.is_valid());
        }
        assert!(enumerate_moves(&g, &[]).is_empty());
    }
}
