use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

/// Integer Laurent polynomial in one variable `A`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent(BTreeMap<i32, i64>);

impl Laurent {
    pub fn zero() -> Self {
        Laurent(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::mono(0, 1)
    }

    pub fn mono(exp: i32, coef: i64) -> Self {
        let mut m = BTreeMap::new();
        if coef != 0 {
            m.insert(exp, coef);
        }
        Laurent(m)
    }

    pub fn from_terms(terms: &[(i32, i64)]) -> Self {
        terms.iter().fold(Self::zero(), |acc, &(e, c)| acc + Self::mono(e, c))
    }

    /// The loop value -A^2 - A^-2.
    pub fn delta() -> Self {
        Self::from_terms(&[(2, -1), (-2, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.0.iter().map(|(e, c)| (*e, *c))
    }

    pub fn shift(&self, by: i32) -> Self {
        Laurent(self.0.iter().map(|(e, c)| (e + by, *c)).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Laurent(self.0.iter().map(|(e, c)| (*e, c * k)).collect())
    }

    pub fn add_assign(&mut self, other: &Laurent) {
        for (e, c) in &other.0 {
            let v = self.0.entry(*e).or_insert(0);
            *v += c;
            if *v == 0 {
                self.0.remove(e);
            }
        }
    }

    pub fn pow_delta(k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * &Self::delta())
    }

    /// Exact division by -A^2 - A^-2; `None` if it does not divide.
    pub fn div_delta(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // p / (-A^-2 (A^4 + 1)) = -A^2 * p / (A^4 + 1)
        let mut rem = self.0.clone();
        let mut q = BTreeMap::new();
        while let Some((&top, &c)) = rem.iter().next_back() {
            let lo = *rem.keys().next().unwrap();
            if top - 4 < lo {
                return None;
            }
            q.insert(top - 4, c);
            for e in [top, top - 4] {
                let v = rem.entry(e).or_insert(0);
                *v -= c;
                if *v == 0 {
                    rem.remove(&e);
                }
            }
        }
        Some(Laurent(q).scale(-1).shift(2))
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, rhs: Laurent) -> Laurent {
        self.add_assign(&rhs);
        self
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &rhs.0 {
                out.add_assign(&Laurent::mono(e1 + e2, c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.0.iter().rev() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (*e, mag) {
                (0, m) => write!(f, "{m}")?,
                (e, 1) => write!(f, "A^{e}")?,
                (e, m) => write!(f, "{m}A^{e}")?,
            }
        }
        Ok(())
    }
}
