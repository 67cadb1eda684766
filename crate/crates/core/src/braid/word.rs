use std::fmt;

use thiserror::Error;

/// One generator of the singular braid monoid. Indices start at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Sigma(usize),
    SigmaInv(usize),
    Tau(usize),
    Xi(usize),
}

impl Letter {
    pub fn index(self) -> usize {
        match self {
            Letter::Sigma(i) | Letter::SigmaInv(i) | Letter::Tau(i) | Letter::Xi(i) => i,
        }
    }

    pub fn with_index(self, i: usize) -> Letter {
        match self {
            Letter::Sigma(_) => Letter::Sigma(i),
            Letter::SigmaInv(_) => Letter::SigmaInv(i),
            Letter::Tau(_) => Letter::Tau(i),
            Letter::Xi(_) => Letter::Xi(i),
        }
    }

    pub fn is_singular(self) -> bool {
        matches!(self, Letter::Tau(_) | Letter::Xi(_))
    }

    /// Contribution to the exponent sum of the σ letters; ξ carries one σ.
    pub fn exponent(self) -> i64 {
        match self {
            Letter::Sigma(_) | Letter::Xi(_) => 1,
            Letter::SigmaInv(_) => -1,
            _ => 0,
        }
    }

    pub fn inverse(self) -> Option<Letter> {
        match self {
            Letter::Sigma(i) => Some(Letter::SigmaInv(i)),
            Letter::SigmaInv(i) => Some(Letter::Sigma(i)),
            _ => None,
        }
    }

    fn token(self) -> String {
        match self {
            Letter::Sigma(i) => format!("s{i}"),
            Letter::SigmaInv(i) => format!("S{i}"),
            Letter::Tau(i) => format!("t{i}"),
            Letter::Xi(i) => format!("x{i}"),
        }
    }

    fn from_token(t: &str) -> Option<Letter> {
        let mut ch = t.chars();
        let head = ch.next()?;
        let i: usize = ch.as_str().parse().ok().filter(|&i| i > 0)?;
        Some(match head {
            's' => Letter::Sigma(i),
            'S' => Letter::SigmaInv(i),
            't' => Letter::Tau(i),
            'x' => Letter::Xi(i),
            _ => return None,
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("letter {letter} out of range for {strands} strands")]
    Index { letter: Letter, strands: usize },
    #[error("position {0} is not a singular letter")]
    NotSingularLetter(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingularBraidWord {
    pub strands: usize,
    pub letters: Vec<Letter>,
}

impl SingularBraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        let w = SingularBraidWord { strands, letters };
        w.check()?;
        Ok(w)
    }

    pub fn identity(strands: usize) -> Self {
        SingularBraidWord { strands, letters: Vec::new() }
    }

    pub fn check(&self) -> Result<(), BraidError> {
        for &l in &self.letters {
            if l.index() >= self.strands {
                return Err(BraidError::Index { letter: l, strands: self.strands });
            }
        }
        Ok(())
    }

    pub fn singular_count(&self) -> usize {
        self.letters.iter().filter(|l| l.is_singular()).count()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.exponent()).sum()
    }

    /// Permutation of positions induced by the word (position at the start to
    /// position at the end), 0-based.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            if let Letter::Xi(_) = l {
                continue;
            }
            let i = l.index() - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &s) in at.iter().enumerate() {
            perm[s] = pos;
        }
        perm
    }

    pub fn parse(text: &str) -> Result<Self, BraidError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.starts_with('#'));
        let (hl, header) = loop {
            match lines.next() {
                Some((_, "")) => continue,
                Some(x) => break x,
                None => return Err(BraidError::Parse { line: 1, msg: "missing header".into() }),
            }
        };
        let mut hw = header.split_whitespace();
        let strands = match (hw.next(), hw.next(), hw.next()) {
            (Some("braid"), Some(k), None) => k.parse::<usize>().ok().filter(|&k| k > 0),
            _ => None,
        }
        .ok_or(BraidError::Parse { line: hl, msg: format!("bad header `{header}`") })?;
        let mut letters = Vec::new();
        for (line, l) in lines {
            for t in l.split_whitespace() {
                let x = Letter::from_token(t).ok_or(BraidError::Parse { line, msg: format!("malformed letter `{t}`") })?;
                letters.push(x);
            }
        }
        Self::new(strands, letters)
    }

    pub fn word_string(&self) -> String {
        self.letters.iter().map(|l| l.token()).collect::<Vec<_>>().join(" ")
    }

    pub fn serialize(&self) -> String {
        format!("braid {}\n{}\n", self.strands, self.word_string())
    }
}

impl fmt::Display for SingularBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let w = SingularBraidWord::parse("braid 3\ns1 S2 t1 x2\n").unwrap();
        assert_eq!(w.letters, vec![Letter::Sigma(1), Letter::SigmaInv(2), Letter::Tau(1), Letter::Xi(2)]);
        assert_eq!(SingularBraidWord::parse(&w.serialize()).unwrap(), w);
        let e = SingularBraidWord::parse("braid 1\n").unwrap();
        assert_eq!(e.serialize(), "braid 1\n\n");
    }

    #[test]
    fn out_of_range() {
        assert!(SingularBraidWord::parse("braid 2\ns2\n").is_err());
        assert!(SingularBraidWord::parse("braid 2\nq1\n").is_err());
    }

    #[test]
    fn permutation_ignores_xi() {
        let w = SingularBraidWord::parse("braid 3\nx1 s2\n").unwrap();
        assert_eq!(w.permutation(), vec![0, 2, 1]);
    }
}
