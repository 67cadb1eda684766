//! Resolutions of singular tiles and singular braid letters.

use std::fmt;

use thiserror::Error;

use crate::braid::{BraidError, Letter, SingularBraidWord};
use crate::grid::{Cell, GridDiagram, Orient};
use crate::skeleton::{Expansion, Stop};

/// Which resolution: positive crossing, negative crossing, or oriented smoothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eta {
    Plus,
    Minus,
    Zero,
}

impl Eta {
    pub const ALL: [Eta; 3] = [Eta::Plus, Eta::Minus, Eta::Zero];

    pub fn parse(s: &str) -> Option<Eta> {
        match s {
            "+" | "plus" => Some(Eta::Plus),
            "-" | "minus" => Some(Eta::Minus),
            "0" | "zero" => Some(Eta::Zero),
            _ => None,
        }
    }
}

impl fmt::Display for Eta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eta::Plus => "+",
            Eta::Minus => "-",
            Eta::Zero => "0",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("cell ({0},{1}) is not a singular tile")]
    NotSingular(usize, usize),
    #[error("{0}")]
    Braid(#[from] BraidError),
}

/// Replacement shapes for a singular tile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Patch {
    /// The two arcs become a plain crossing.
    Cross,
    /// 2x2: corners `sw` (top right) and `ne` (bottom left), crossing twice.
    Clasp,
    /// 2x2: corners `ne` (top right) and `sw` (bottom left), no crossing.
    Apart,
    /// 2x2: corners `nw` (top left) and `se` (bottom right).
    Smooth,
}

fn patch(o: Orient, eta: Eta) -> Patch {
    match (o, eta) {
        (Orient::E | Orient::W, Eta::Plus) => Patch::Clasp,
        (Orient::E | Orient::W, Eta::Minus) => Patch::Apart,
        (Orient::E | Orient::W, Eta::Zero) => Patch::Cross,
        (Orient::N | Orient::S, Eta::Plus) => Patch::Apart,
        (Orient::N | Orient::S, Eta::Minus) => Patch::Clasp,
        (Orient::N | Orient::S, Eta::Zero) => Patch::Smooth,
    }
}

/// Replace the singular tile at `(r, c)` by its η-resolution.
pub fn resolve(g: &GridDiagram, (r, c): (usize, usize), eta: Eta) -> Result<GridDiagram, ResolutionError> {
    let Some(Cell::Singular(o)) = g.get(r, c) else {
        return Err(ResolutionError::NotSingular(r, c));
    };
    let corner = Stop::Corner;
    let (ex, cells) = match patch(o, eta) {
        Patch::Cross => {
            let mut out = g.clone();
            out.cells.remove(&(r, c));
            return Ok(out);
        }
        Patch::Clasp => (Expansion { r, c, rw: 1, re: 0, cn: 0, cs: 1 }, [((1, 1), corner), ((0, 0), corner)]),
        Patch::Apart => (Expansion { r, c, rw: 0, re: 1, cn: 1, cs: 0 }, [((1, 1), corner), ((0, 0), corner)]),
        Patch::Smooth => (Expansion { r, c, rw: 1, re: 0, cn: 0, cs: 1 }, [((1, 0), corner), ((0, 1), corner)]),
    };
    Ok(ex.apply(g, &cells).expect("resolution patches keep the diagram closed"))
}

/// Replace the singular letter at `pos` by its η-resolution.
pub fn resolve_braid(w: &SingularBraidWord, pos: usize, eta: Eta) -> Result<SingularBraidWord, ResolutionError> {
    let l = *w.letters.get(pos).ok_or(BraidError::NotSingularLetter(pos))?;
    let rep: Vec<Letter> = match (l, eta) {
        (Letter::Tau(i), Eta::Plus) => vec![Letter::Sigma(i)],
        (Letter::Tau(i), Eta::Minus) => vec![Letter::SigmaInv(i)],
        (Letter::Tau(_), Eta::Zero) => vec![],
        (Letter::Xi(i), Eta::Plus) => vec![Letter::Sigma(i), Letter::Sigma(i)],
        (Letter::Xi(_), Eta::Minus) => vec![],
        (Letter::Xi(i), Eta::Zero) => vec![Letter::Sigma(i)],
        _ => return Err(BraidError::NotSingularLetter(pos).into()),
    };
    let mut letters = w.letters[..pos].to_vec();
    letters.extend(rep);
    letters.extend_from_slice(&w.letters[pos + 1..]);
    Ok(SingularBraidWord { strands: w.strands, letters })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_letters() {
        let w = SingularBraidWord::parse("braid 2\nx1\n").unwrap();
        assert_eq!(resolve_braid(&w, 0, Eta::Plus).unwrap().word_string(), "s1 s1");
        assert_eq!(resolve_braid(&w, 0, Eta::Minus).unwrap().letters.len(), 0);
        let w = SingularBraidWord::parse("braid 3\ns1 t2 s1\n").unwrap();
        assert_eq!(resolve_braid(&w, 1, Eta::Zero).unwrap().word_string(), "s1 s1");
        assert!(resolve_braid(&w, 0, Eta::Zero).is_err());
    }
}
