//! Singular grid diagrams: cells, the text format, validation and strand tracing.
//!
//! Rows are numbered bottom to top and columns left to right, both from 1.
//! The file format lists rows top to bottom.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    North,
    East,
    South,
    West,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::North, Side::East, Side::South, Side::West];

    pub fn opposite(self) -> Side {
        match self {
            Side::North => Side::South,
            Side::South => Side::North,
            Side::East => Side::West,
            Side::West => Side::East,
        }
    }

    pub fn is_horizontal(self) -> bool {
        matches!(self, Side::East | Side::West)
    }

    /// Step in (row, col) when leaving a cell through this side.
    pub fn delta(self) -> (isize, isize) {
        match self {
            Side::North => (1, 0),
            Side::South => (-1, 0),
            Side::East => (0, 1),
            Side::West => (0, -1),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::North => 'n',
            Side::East => 'e',
            Side::South => 's',
            Side::West => 'w',
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Side::North => "north",
            Side::East => "east",
            Side::South => "south",
            Side::West => "west",
        };
        f.write_str(s)
    }
}

/// `In` means the strand enters through the horizontal arm (token `+`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flow {
    In,
    Out,
}

impl Flow {
    pub fn reversed(self) -> Flow {
        match self {
            Flow::In => Flow::Out,
            Flow::Out => Flow::In,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub north: bool,
    pub east: bool,
    pub flow: Flow,
}

impl Corner {
    pub fn new(v: Side, h: Side, flow: Flow) -> Corner {
        assert!(!v.is_horizontal() && h.is_horizontal());
        Corner { north: v == Side::North, east: h == Side::East, flow }
    }

    pub fn v(&self) -> Side {
        if self.north { Side::North } else { Side::South }
    }

    pub fn h(&self) -> Side {
        if self.east { Side::East } else { Side::West }
    }

    pub fn entry(&self) -> Side {
        match self.flow {
            Flow::In => self.h(),
            Flow::Out => self.v(),
        }
    }

    pub fn exit(&self) -> Side {
        match self.flow {
            Flow::In => self.v(),
            Flow::Out => self.h(),
        }
    }

    pub fn has_arm(&self, s: Side) -> bool {
        s == self.v() || s == self.h()
    }

    /// Corner with the given entry and exit sides.
    pub fn from_route(entry: Side, exit: Side) -> Corner {
        if entry.is_horizontal() {
            Corner::new(exit, entry, Flow::In)
        } else {
            Corner::new(entry, exit, Flow::Out)
        }
    }

    /// The right-cusp class of the front (`nw` in either flow).
    pub fn is_right_cusp(&self) -> bool {
        self.north && !self.east
    }

    pub fn is_left_cusp(&self) -> bool {
        !self.north && self.east
    }
}

/// Orientation of a singular tile. Arc A joins west and south, arc B joins
/// north and east; they touch at the center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orient {
    N,
    E,
    W,
    S,
}

impl Orient {
    pub const ALL: [Orient; 4] = [Orient::N, Orient::E, Orient::W, Orient::S];

    /// Arc A is traversed west to south.
    pub fn a_forward(self) -> bool {
        matches!(self, Orient::E | Orient::S)
    }

    /// Arc B is traversed north to east.
    pub fn b_forward(self) -> bool {
        matches!(self, Orient::E | Orient::N)
    }

    pub fn from_arcs(a_forward: bool, b_forward: bool) -> Orient {
        match (a_forward, b_forward) {
            (true, true) => Orient::E,
            (false, false) => Orient::W,
            (false, true) => Orient::N,
            (true, false) => Orient::S,
        }
    }

    /// (entry, exit) of arc A then arc B.
    pub fn arcs(self) -> [(Side, Side); 2] {
        let a = if self.a_forward() { (Side::West, Side::South) } else { (Side::South, Side::West) };
        let b = if self.b_forward() { (Side::North, Side::East) } else { (Side::East, Side::North) };
        [a, b]
    }

    pub fn route(self, entry: Side) -> Option<Side> {
        self.arcs().iter().find(|(i, _)| *i == entry).map(|(_, o)| *o)
    }

    /// Index of the arc using this side: 0 for A, 1 for B.
    pub fn arc_of(side: Side) -> usize {
        match side {
            Side::West | Side::South => 0,
            Side::North | Side::East => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Orient::N => 'n',
            Orient::E => 'e',
            Orient::W => 'w',
            Orient::S => 's',
        }
    }

    /// Contribution of the singular point to tb.
    pub fn tb_sign(self) -> i64 {
        match self {
            Orient::E | Orient::W => 1,
            Orient::N | Orient::S => -1,
        }
    }
}

impl fmt::Display for Orient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter().to_ascii_uppercase())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Corner(Corner),
    Singular(Orient),
}

impl Cell {
    pub fn token(&self) -> String {
        match self {
            Cell::Corner(c) => {
                let f = if c.flow == Flow::In { '+' } else { '-' };
                format!("{}{}{}", c.v().letter(), c.h().letter(), f)
            }
            Cell::Singular(o) => format!("*{}", o.letter()),
        }
    }

    fn from_token(t: &str) -> Option<Option<Cell>> {
        if t == "." {
            return Some(None);
        }
        let b = t.as_bytes();
        if b.len() == 2 && b[0] == b'*' {
            let o = match b[1] {
                b'n' => Orient::N,
                b'e' => Orient::E,
                b'w' => Orient::W,
                b's' => Orient::S,
                _ => return None,
            };
            return Some(Some(Cell::Singular(o)));
        }
        if b.len() != 3 {
            return None;
        }
        let v = match b[0] {
            b'n' => Side::North,
            b's' => Side::South,
            _ => return None,
        };
        let h = match b[1] {
            b'e' => Side::East,
            b'w' => Side::West,
            _ => return None,
        };
        let flow = match b[2] {
            b'+' => Flow::In,
            b'-' => Flow::Out,
            _ => return None,
        };
        Some(Some(Cell::Corner(Corner::new(v, h, flow))))
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, Cell::Singular(_))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid diagram: {0}")]
    Invalid(String),
}

/// A diagram is its size plus the sparse map of corners and singular tiles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridDiagram {
    pub n: usize,
    pub cells: BTreeMap<(usize, usize), Cell>,
}

impl GridDiagram {
    pub fn new(n: usize) -> GridDiagram {
        GridDiagram { n, cells: BTreeMap::new() }
    }

    pub fn get(&self, r: usize, c: usize) -> Option<Cell> {
        self.cells.get(&(r, c)).copied()
    }

    pub fn set(&mut self, r: usize, c: usize, cell: Cell) {
        self.cells.insert((r, c), cell);
    }

    pub fn singular_cells(&self) -> Vec<(usize, usize)> {
        self.cells.iter().filter(|(_, c)| c.is_singular()).map(|(p, _)| *p).collect()
    }

    pub fn corner_count(&self) -> usize {
        self.cells.values().filter(|c| !c.is_singular()).count()
    }

    pub fn parse(text: &str) -> Result<GridDiagram, GridError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(GridError::Parse { line: 1, msg: "missing header".into() })?;
        let mut hw = header.split_whitespace();
        let n = match (hw.next(), hw.next(), hw.next()) {
            (Some("grid"), Some(k), None) => k.parse::<usize>().ok().filter(|&k| k > 0),
            _ => None,
        }
        .ok_or(GridError::Parse { line: hl, msg: format!("bad header `{header}`") })?;
        let rows: Vec<(usize, &str)> = lines.collect();
        if rows.len() != n {
            let line = rows.get(n).map(|r| r.0).unwrap_or(hl);
            return Err(GridError::Parse { line, msg: format!("expected {n} rows, found {}", rows.len()) });
        }
        let mut g = GridDiagram::new(n);
        for (k, (line, row)) in rows.iter().enumerate() {
            let toks: Vec<&str> = row.split_whitespace().collect();
            if toks.len() != n {
                return Err(GridError::Parse { line: *line, msg: format!("ragged row: {} tokens, expected {n}", toks.len()) });
            }
            let r = n - k;
            for (j, t) in toks.iter().enumerate() {
                match Cell::from_token(t) {
                    Some(Some(cell)) => g.set(r, j + 1, cell),
                    Some(None) => {}
                    None => return Err(GridError::Parse { line: *line, msg: format!("malformed token `{t}`") }),
                }
            }
        }
        Ok(g)
    }

    pub fn serialize(&self) -> String {
        let mut s = format!("grid {}\n", self.n);
        for r in (1..=self.n).rev() {
            let row: Vec<String> = (1..=self.n)
                .map(|c| self.get(r, c).map(|x| x.token()).unwrap_or_else(|| ".".into()))
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Walk from `(r, c)` through `side` to the next occupied cell in that line.
    fn ray(&self, r: usize, c: usize, side: Side) -> Option<(usize, usize)> {
        let (dr, dc) = side.delta();
        let (mut rr, mut cc) = (r as isize, c as isize);
        loop {
            rr += dr;
            cc += dc;
            if rr < 1 || cc < 1 || rr > self.n as isize || cc > self.n as isize {
                return None;
            }
            if self.cells.contains_key(&(rr as usize, cc as usize)) {
                return Some((rr as usize, cc as usize));
            }
        }
    }

    fn arms(cell: Cell) -> Vec<Side> {
        match cell {
            Cell::Corner(c) => vec![c.v(), c.h()],
            Cell::Singular(_) => Side::ALL.to_vec(),
        }
    }

    /// Whether `side` is where the strand leaves the cell.
    fn is_exit(cell: Cell, side: Side) -> bool {
        match cell {
            Cell::Corner(c) => c.exit() == side,
            Cell::Singular(o) => o.arcs().iter().any(|(_, out)| *out == side),
        }
    }

    pub fn validate(&self) -> Result<(), Vec<String>> {
        let mut v = Vec::new();
        let n = self.n;
        if n == 0 {
            return Err(vec!["grid size is zero".into()]);
        }
        for &(r, c) in self.cells.keys() {
            if r < 1 || c < 1 || r > n || c > n {
                v.push(format!("cell ({r},{c}) outside the {n}x{n} grid"));
            }
        }
        if !v.is_empty() {
            return Err(v);
        }
        for i in 1..=n {
            let rc = self.cells.iter().filter(|((r, _), x)| *r == i && !x.is_singular()).count();
            let cc = self.cells.iter().filter(|((_, c), x)| *c == i && !x.is_singular()).count();
            if rc > 2 {
                v.push(format!("row {i} has {rc} corners"));
            }
            if cc > 2 {
                v.push(format!("column {i} has {cc} corners"));
            }
            if !self.cells.keys().any(|(r, _)| *r == i) {
                v.push(format!("row {i} is empty"));
            }
            if !self.cells.keys().any(|(_, c)| *c == i) {
                v.push(format!("column {i} is empty"));
            }
        }
        for (&(r, c), &cell) in &self.cells {
            for side in Self::arms(cell) {
                let Some((r2, c2)) = self.ray(r, c, side) else {
                    v.push(format!("open strand at ({r},{c}) {side} side"));
                    continue;
                };
                let other = self.cells[&(r2, c2)];
                let back = side.opposite();
                if !Self::arms(other).contains(&back) {
                    v.push(format!("open strand at ({r},{c}) {side} side"));
                    continue;
                }
                if Self::is_exit(cell, side) == Self::is_exit(other, back) && (r, c) < (r2, c2) {
                    v.push(format!("inconsistent orientation between ({r},{c}) and ({r2},{c2})"));
                }
            }
        }
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Every cell resolved to a tile. Assumes a valid diagram.
    pub fn derive_tiling(&self) -> DerivedTiling {
        let n = self.n;
        let mut t = vec![Tile::Empty; n * n];
        let idx = |r: usize, c: usize| (r - 1) * n + (c - 1);
        let mut horiz = vec![false; n * n];
        let mut vert = vec![false; n * n];
        for (&(r, c), &cell) in &self.cells {
            t[idx(r, c)] = match cell {
                Cell::Corner(k) => Tile::Corner(k),
                Cell::Singular(o) => Tile::Singular(o),
            };
            for side in [Side::East, Side::North] {
                if !Self::arms(cell).contains(&side) {
                    continue;
                }
                if let Some((r2, c2)) = self.ray(r, c, side) {
                    if side == Side::East {
                        (c + 1..c2).for_each(|k| horiz[idx(r, k)] = true);
                    } else {
                        (r + 1..r2).for_each(|k| vert[idx(k, c)] = true);
                    }
                }
            }
        }
        for r in 1..=n {
            for c in 1..=n {
                let i = idx(r, c);
                if t[i] != Tile::Empty {
                    continue;
                }
                t[i] = match (horiz[i], vert[i]) {
                    (true, true) => Tile::Crossing,
                    (true, false) => Tile::Horizontal,
                    (false, true) => Tile::Vertical,
                    _ => Tile::Empty,
                };
            }
        }
        DerivedTiling { n, tiles: t }
    }

    /// Oriented circuits, each starting at its least occupied cell.
    /// Assumes a valid diagram.
    pub fn trace_strands(&self) -> Vec<Circuit> {
        let mut seen: BTreeMap<((usize, usize), Side), bool> = BTreeMap::new();
        let mut out = Vec::new();
        for (&(r, c), &cell) in &self.cells {
            let entries: Vec<Side> = match cell {
                Cell::Corner(k) => vec![k.entry()],
                Cell::Singular(o) => o.arcs().iter().map(|a| a.0).collect(),
            };
            for e in entries {
                if seen.contains_key(&((r, c), e)) {
                    continue;
                }
                let mut circuit = Vec::new();
                let (mut pr, mut pc, mut entry) = (r, c, e);
                loop {
                    seen.insert(((pr, pc), entry), true);
                    let here = self.cells[&(pr, pc)];
                    let exit = match here {
                        Cell::Corner(k) => k.exit(),
                        Cell::Singular(o) => o.route(entry).expect("valid diagram"),
                    };
                    circuit.push(Passage { row: pr, col: pc, entry, exit });
                    let (nr, nc) = self.ray(pr, pc, exit).expect("valid diagram");
                    let (dr, dc) = exit.delta();
                    let (mut rr, mut cc) = (pr as isize + dr, pc as isize + dc);
                    while (rr as usize, cc as usize) != (nr, nc) {
                        circuit.push(Passage { row: rr as usize, col: cc as usize, entry: exit.opposite(), exit });
                        rr += dr;
                        cc += dc;
                    }
                    pr = nr;
                    pc = nc;
                    entry = exit.opposite();
                    if (pr, pc) == (r, c) && entry == e {
                        break;
                    }
                }
                out.push(Circuit { passages: circuit });
            }
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.trace_strands().len()
    }

    /// Travel direction of the horizontal and vertical strands at each crossing.
    pub fn crossings(&self) -> Vec<CrossingInfo> {
        let tiling = self.derive_tiling();
        let mut h: BTreeMap<(usize, usize), Side> = BTreeMap::new();
        let mut v: BTreeMap<(usize, usize), Side> = BTreeMap::new();
        for circ in self.trace_strands() {
            for p in circ.passages {
                if tiling.get(p.row, p.col) == Tile::Crossing {
                    if p.exit.is_horizontal() {
                        h.insert((p.row, p.col), p.exit);
                    } else {
                        v.insert((p.row, p.col), p.exit);
                    }
                }
            }
        }
        h.into_iter()
            .map(|((r, c), hd)| CrossingInfo { row: r, col: c, h: hd, v: v[&(r, c)] })
            .collect()
    }

    pub fn render_ascii(&self) -> String {
        let t = self.derive_tiling();
        let mut s = String::new();
        for r in (1..=self.n).rev() {
            for c in 1..=self.n {
                s.push_str(match t.get(r, c) {
                    Tile::Empty => "   ",
                    Tile::Horizontal => "───",
                    Tile::Vertical => " │ ",
                    Tile::Crossing => "─│─",
                    Tile::Corner(k) => match (k.north, k.east) {
                        (false, true) => " ┌─",
                        (false, false) => "─┐ ",
                        (true, true) => " └─",
                        (true, false) => "─┘ ",
                    },
                    Tile::Singular(o) => match o {
                        Orient::N => "─┿n",
                        Orient::E => "─┿e",
                        Orient::W => "─┿w",
                        Orient::S => "─┿s",
                    },
                });
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tile {
    Empty,
    Horizontal,
    Vertical,
    Corner(Corner),
    Crossing,
    Singular(Orient),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedTiling {
    pub n: usize,
    tiles: Vec<Tile>,
}

impl DerivedTiling {
    pub fn get(&self, r: usize, c: usize) -> Tile {
        self.tiles[(r - 1) * self.n + (c - 1)]
    }

    pub fn crossing_count(&self) -> usize {
        self.tiles.iter().filter(|t| **t == Tile::Crossing).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub row: usize,
    pub col: usize,
    pub entry: Side,
    pub exit: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub passages: Vec<Passage>,
}

/// A crossing with the travel directions of its two strands; the vertical one is over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingInfo {
    pub row: usize,
    pub col: usize,
    pub h: Side,
    pub v: Side,
}

impl CrossingInfo {
    pub fn sign(&self) -> i64 {
        match (self.h, self.v) {
            (Side::East, Side::South) | (Side::West, Side::North) => 1,
            _ => -1,
        }
    }
}

/// Corner with arms chosen by its position in the row and column spans.
pub fn corner_for(left_end: bool, bottom_end: bool, flow: Flow) -> Corner {
    Corner::new(
        if bottom_end { Side::North } else { Side::South },
        if left_end { Side::East } else { Side::West },
        flow,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNKNOT: &str = "grid 2\nse+ sw-\nne- nw+\n";

    #[test]
    fn unknot_parses_and_validates() {
        let g = GridDiagram::parse(UNKNOT).unwrap();
        assert_eq!(g.n, 2);
        assert_eq!(g.corner_count(), 4);
        assert!(g.is_valid());
        assert_eq!(g.serialize(), UNKNOT);
        let c = g.trace_strands();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].passages.len(), 4);
        assert_eq!(g.derive_tiling().crossing_count(), 0);
    }

    #[test]
    fn singular_token() {
        let g = GridDiagram::parse("grid 3\n. . .\n. *e .\n. . .\n").unwrap();
        assert_eq!(g.get(2, 2), Some(Cell::Singular(Orient::E)));
    }

    #[test]
    fn parse_errors() {
        assert!(GridDiagram::parse("grid 2\n. .\n. .\n. .\n").is_err());
        assert!(GridDiagram::parse("grid 2\n. .\n.\n").is_err());
        assert!(GridDiagram::parse("grid 2\n. x\n. .\n").is_err());
        assert!(GridDiagram::parse("grod 2\n").is_err());
    }

    #[test]
    fn broken_circuit_reported() {
        let mut g = GridDiagram::parse(UNKNOT).unwrap();
        g.cells.remove(&(1, 1));
        let v = g.validate().unwrap_err();
        assert!(v.iter().any(|m| m.contains("open strand at (1,2) west side")), "{v:?}");
    }

    #[test]
    fn three_corners_in_a_row() {
        let g = GridDiagram::parse("grid 3\nse+ sw- .\nne- nw+ nw+\n. . .\n").unwrap();
        let v = g.validate().unwrap_err();
        assert!(v.iter().any(|m| m == "row 2 has 3 corners"), "{v:?}");
    }

    #[test]
    fn flipping_one_flow_breaks_orientation() {
        let mut g = GridDiagram::parse(UNKNOT).unwrap();
        if let Some(Cell::Corner(k)) = g.cells.get_mut(&(1, 1)) {
            k.flow = k.flow.reversed();
        }
        assert!(g.validate().is_err());
    }

    #[test]
    fn two_unknots() {
        let g = GridDiagram::parse("grid 4\n. . se+ sw-\n. . ne- nw+\nse+ sw- . .\nne- nw+ . .\n").unwrap();
        assert!(g.is_valid());
        assert_eq!(g.trace_strands().len(), 2);
    }

    #[test]
    fn crossing_rendered_with_vertical_on_top() {
        // one crossing at (2,2)
        let g = GridDiagram::parse("grid 3\n. se- sw+\nse+ . nw-\nne- nw+ .\n").unwrap();
        assert!(g.is_valid(), "{:?}", g.validate());
        let t = g.derive_tiling();
        assert_eq!(t.get(2, 2), Tile::Crossing);
        let pic = g.render_ascii();
        assert!(pic.lines().nth(1).unwrap().contains("─│─"));
    }
}
