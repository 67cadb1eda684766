//! Bounded search for a chain of relations between two singular braid words.
//!
//! ξ is expanded to στ first. Words are closed under conjugation by working
//! with cyclic words, stored as their lexicographically least rotation.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use super::word::{Letter, SingularBraidWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RewriteOptions {
    /// Conjugation: words are compared as cyclic words.
    pub conjugation: bool,
    /// Exchange move on the last strand.
    pub exchange: bool,
    /// Markov (de)stabilization, up to one strand more than either input.
    pub markov: bool,
    /// Maximum number of distinct words visited.
    pub budget: usize,
    /// How much longer than the longer input an intermediate word may get.
    pub slack: usize,
}

impl Default for RewriteOptions {
    fn default() -> Self {
        RewriteOptions { conjugation: true, exchange: true, markov: false, budget: 1_000_000, slack: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: &'static str,
    pub word: SingularBraidWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Chain of words from the first input to the second, each one rewrite
    /// away from the previous.
    Equivalent(Vec<Step>),
    NotEquivalent(String),
    Unknown { visited: usize },
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent(_))
    }

    pub fn is_not_equivalent(&self) -> bool {
        matches!(self, Verdict::NotEquivalent(_))
    }
}

// letters coded as index * 4 + kind, kind 0 = σ, 1 = σ⁻¹, 2 = τ
type Code = u16;
const S: u16 = 0;
const SI: u16 = 1;
const T: u16 = 2;

fn code(kind: u16, i: usize) -> Code {
    i as u16 * 4 + kind
}

fn kind(c: Code) -> u16 {
    c % 4
}

fn idx(c: Code) -> usize {
    (c / 4) as usize
}

fn inv(c: Code) -> Code {
    match kind(c) {
        S => c + 1,
        SI => c - 1,
        _ => c,
    }
}

fn is_sigma(c: Code) -> bool {
    kind(c) != T
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key {
    n: usize,
    w: Vec<Code>,
}

fn encode(w: &SingularBraidWord) -> Key {
    let mut out = Vec::new();
    for &l in &w.letters {
        match l {
            Letter::Sigma(i) => out.push(code(S, i)),
            Letter::SigmaInv(i) => out.push(code(SI, i)),
            Letter::Tau(i) => out.push(code(T, i)),
            Letter::Xi(i) => out.extend([code(S, i), code(T, i)]),
        }
    }
    Key { n: w.strands, w: out }
}

fn decode(k: &Key) -> SingularBraidWord {
    let letters = k
        .w
        .iter()
        .map(|&c| match kind(c) {
            S => Letter::Sigma(idx(c)),
            SI => Letter::SigmaInv(idx(c)),
            _ => Letter::Tau(idx(c)),
        })
        .collect();
    SingularBraidWord { strands: k.n, letters }
}

fn least_rotation(w: &[Code]) -> Vec<Code> {
    (0..w.len().max(1))
        .map(|r| w[r.min(w.len())..].iter().chain(&w[..r.min(w.len())]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

struct Rules {
    opts: RewriteOptions,
    max_len: usize,
    max_n: usize,
}

impl Rules {
    fn canon(&self, k: Key) -> Key {
        if self.opts.conjugation {
            Key { n: k.n, w: least_rotation(&k.w) }
        } else {
            k
        }
    }

    /// Replace `len` letters starting at `at` (cyclically when conjugating) by `by`.
    fn splice(&self, k: &Key, at: usize, len: usize, by: &[Code]) -> Key {
        let m = k.w.len();
        if at + len <= m {
            let mut w = k.w[..at].to_vec();
            w.extend_from_slice(by);
            w.extend_from_slice(&k.w[at + len..]);
            return Key { n: k.n, w };
        }
        // window wraps: rotate so it starts at 0
        let mut w: Vec<Code> = k.w[at..].iter().chain(&k.w[..at]).copied().collect();
        w.splice(..len, by.iter().copied());
        Key { n: k.n, w }
    }

    fn window(&self, k: &Key, at: usize, len: usize) -> Option<Vec<Code>> {
        let m = k.w.len();
        if len > m || (!self.opts.conjugation && at + len > m) {
            return None;
        }
        Some((0..len).map(|t| k.w[(at + t) % m]).collect())
    }

    fn neighbors(&self, k: &Key, out: &mut Vec<(&'static str, Key)>) {
        let m = k.w.len();
        let starts = if self.opts.conjugation { m } else { m.max(1) };
        for at in 0..starts {
            if let Some(p) = self.window(k, at, 2) {
                let (a, b) = (p[0], p[1]);
                if is_sigma(a) && b == inv(a) && m >= 2 {
                    out.push(("free reduction", self.splice(k, at, 2, &[])));
                }
                if idx(a).abs_diff(idx(b)) > 1 || (idx(a) == idx(b) && is_sigma(a) != is_sigma(b)) {
                    let rule = if idx(a) == idx(b) { "σ commutes with τ" } else { "far commutation" };
                    out.push((rule, self.splice(k, at, 2, &[b, a])));
                }
            }
            if let Some(p) = self.window(k, at, 3) {
                let (a, b, c) = (p[0], p[1], p[2]);
                let (i, j) = (idx(a), idx(b));
                if i.abs_diff(j) == 1 && idx(c) == i {
                    // a b a = b a b, and a b a⁻¹ = b⁻¹ a b for σ letters
                    if is_sigma(a) && is_sigma(b) && c == a && kind(a) == kind(b) {
                        out.push(("braid relation", self.splice(k, at, 3, &[b, a, b])));
                    }
                    if is_sigma(a) && is_sigma(b) && c == inv(a) {
                        let x = code(kind(a), j);
                        out.push(("braid relation", self.splice(k, at, 3, &[inv(x), code(kind(b), i), x])));
                    }
                    // σᵢσⱼτᵢ = τⱼσᵢσⱼ
                    if kind(a) == S && kind(b) == S && kind(c) == T {
                        out.push(("singular braid relation", self.splice(k, at, 3, &[code(T, j), a, b])));
                    }
                    // σᵢ⁻¹τⱼσᵢ = σⱼτᵢσⱼ⁻¹ and σᵢτⱼσᵢ⁻¹ = σⱼ⁻¹τᵢσⱼ
                    if is_sigma(a) && kind(b) == T && c == inv(a) {
                        let x = code(kind(c), j);
                        out.push(("singular braid relation", self.splice(k, at, 3, &[x, code(T, i), inv(x)])));
                    }
                }
                // τⱼσᵢσⱼ = σᵢσⱼτᵢ
                if kind(a) == T && kind(b) == S && kind(c) == S && idx(b).abs_diff(idx(c)) == 1 && idx(a) == idx(c) {
                    out.push(("singular braid relation", self.splice(k, at, 3, &[b, c, code(T, idx(b))])));
                }
            }
        }
        if m + 2 <= self.max_len {
            // on a cyclic word the end is the same gap as the start
            let gaps = if self.opts.conjugation && m > 0 { m } else { m + 1 };
            for at in 0..gaps {
                for i in 1..k.n {
                    for s in [S, SI] {
                        let x = code(s, i);
                        let mut w = k.w.clone();
                        w.splice(at..at, [x, inv(x)]);
                        out.push(("free insertion", Key { n: k.n, w }));
                    }
                }
            }
        }
        if self.opts.exchange && k.n >= 3 {
            let top = k.n - 1;
            let pos: Vec<usize> = (0..m).filter(|&t| idx(k.w[t]) == top).collect();
            if pos.len() == 2 && is_sigma(k.w[pos[0]]) && k.w[pos[1]] == inv(k.w[pos[0]]) {
                if self.opts.conjugation || pos[1] == m - 1 {
                    let mut w = k.w.clone();
                    w[pos[0]] = inv(w[pos[0]]);
                    w[pos[1]] = inv(w[pos[1]]);
                    out.push(("exchange", Key { n: k.n, w }));
                }
            }
        }
        if self.opts.markov {
            let top = k.n.saturating_sub(1);
            let pos: Vec<usize> = (0..m).filter(|&t| idx(k.w[t]) == top).collect();
            if top >= 1 && pos.len() == 1 && is_sigma(k.w[pos[0]]) {
                let mut w = k.w.clone();
                w.remove(pos[0]);
                out.push(("destabilization", Key { n: k.n - 1, w }));
            }
            if k.n < self.max_n && m < self.max_len {
                for s in [S, SI] {
                    let mut w = k.w.clone();
                    w.push(code(s, k.n));
                    out.push(("stabilization", Key { n: k.n + 1, w }));
                }
            }
        }
    }
}

/// Cheap invariants of every relation in use; `Err` names the first that differs.
fn separate(u: &SingularBraidWord, v: &SingularBraidWord, opts: &RewriteOptions) -> Result<(), String> {
    if u.singular_count() != v.singular_count() {
        return Err(format!("singular letters {} vs {}", u.singular_count(), v.singular_count()));
    }
    let cycles = |w: &SingularBraidWord| {
        let p = w.permutation();
        let mut seen = vec![false; p.len()];
        let mut lens = Vec::new();
        for s in 0..p.len() {
            let mut len = 0;
            let mut t = s;
            while !seen[t] {
                seen[t] = true;
                t = p[t];
                len += 1;
            }
            if len > 0 {
                lens.push(len);
            }
        }
        lens.sort_unstable();
        lens
    };
    let (cu, cv) = (cycles(u), cycles(v));
    if cu.len() != cv.len() {
        return Err(format!("closure components {} vs {}", cu.len(), cv.len()));
    }
    if opts.markov {
        if (u.exponent_sum() + u.strands as i64 - v.exponent_sum() - v.strands as i64) % 2 != 0 {
            return Err("exponent sum plus strands differ in parity".into());
        }
        return Ok(());
    }
    if u.strands != v.strands {
        return Err(format!("strands {} vs {}", u.strands, v.strands));
    }
    if u.exponent_sum() != v.exponent_sum() {
        return Err(format!("exponent sum {} vs {}", u.exponent_sum(), v.exponent_sum()));
    }
    if opts.conjugation && cu != cv || !opts.conjugation && u.permutation() != v.permutation() {
        return Err("permutations differ".into());
    }
    Ok(())
}

pub fn rewrite_equivalent(u: &SingularBraidWord, v: &SingularBraidWord, opts: &RewriteOptions) -> Verdict {
    if let Err(why) = separate(u, v, opts) {
        return Verdict::NotEquivalent(why);
    }
    let (ku, kv) = (encode(u), encode(v));
    let rules = Rules {
        opts: *opts,
        max_len: ku.w.len().max(kv.w.len()) + opts.slack,
        max_n: u.strands.max(v.strands) + 1,
    };
    let (su, sv) = (rules.canon(ku), rules.canon(kv));
    // parent links per side; the rule names the step from the parent
    let mut seen: [HashMap<Key, Option<(Key, &'static str)>>; 2] = [HashMap::new(), HashMap::new()];
    seen[0].insert(su.clone(), None);
    seen[1].insert(sv.clone(), None);
    let mut queues = [VecDeque::from([su.clone()]), VecDeque::from([sv.clone()])];
    let mut meet = if su == sv { Some(su.clone()) } else { None };
    let mut buf = Vec::new();
    while meet.is_none() {
        let side = if queues[0].len() <= queues[1].len() && !queues[0].is_empty() || queues[1].is_empty() { 0 } else { 1 };
        let Some(k) = queues[side].pop_front() else { break };
        buf.clear();
        rules.neighbors(&k, &mut buf);
        for (rule, nk) in buf.drain(..) {
            let nk = rules.canon(nk);
            if let Entry::Vacant(e) = seen[side].entry(nk.clone()) {
                e.insert(Some((k.clone(), rule)));
                if seen[1 - side].contains_key(&nk) {
                    meet = Some(nk);
                    break;
                }
                queues[side].push_back(nk);
            }
        }
        if seen[0].len() + seen[1].len() >= opts.budget {
            break;
        }
        if queues[0].is_empty() && queues[1].is_empty() {
            break;
        }
    }
    let Some(mid) = meet else {
        return Verdict::Unknown { visited: seen[0].len() + seen[1].len() };
    };
    let chain = |side: usize| {
        let mut out = Vec::new();
        let mut k = mid.clone();
        while let Some(Some((p, rule))) = seen[side].get(&k) {
            out.push((rule, k.clone(), p.clone()));
            k = p.clone();
        }
        out
    };
    let mut steps = vec![Step { rule: "start", word: decode(&su) }];
    for (rule, k, _) in chain(0).into_iter().rev() {
        steps.push(Step { rule, word: decode(&k) });
    }
    for (rule, _, p) in chain(1) {
        steps.push(Step { rule, word: decode(&p) });
    }
    Verdict::Equivalent(steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> SingularBraidWord {
        SingularBraidWord::parse(s).unwrap()
    }

    fn eq(a: &str, b: &str) -> Verdict {
        rewrite_equivalent(&w(a), &w(b), &RewriteOptions::default())
    }

    #[test]
    fn basic_relations() {
        assert!(eq("braid 2\ns1 t1\n", "braid 2\nt1 s1\n").is_equivalent());
        assert!(eq("braid 3\ns1 s2 s1\n", "braid 3\ns2 s1 s2\n").is_equivalent());
        assert!(eq("braid 2\ns1\n", "braid 2\nt1\n").is_not_equivalent());
        assert!(eq("braid 2\nx1\n", "braid 2\nt1 s1\n").is_equivalent());
        assert!(eq("braid 3\ns1 s2 t1\n", "braid 3\nt2 s1 s2\n").is_equivalent());
        assert!(eq("braid 3\nS1 t2 s1\n", "braid 3\ns2 t1 S2\n").is_equivalent());
    }

    #[test]
    fn conjugation_and_exchange() {
        assert!(eq("braid 3\ns1 s2 S1\n", "braid 3\ns2\n").is_equivalent());
        assert!(eq("braid 3\nt1 s2 s1 S2\n", "braid 3\nt1 S2 s1 s2\n").is_equivalent());
        let no_ex = RewriteOptions { exchange: false, conjugation: false, ..RewriteOptions::default() };
        let v = rewrite_equivalent(&w("braid 3\ns1 s2\n"), &w("braid 3\ns2 s1\n"), &no_ex);
        assert!(!v.is_equivalent());
    }

    #[test]
    fn markov() {
        let m = RewriteOptions { markov: true, ..RewriteOptions::default() };
        assert!(rewrite_equivalent(&w("braid 1\n"), &w("braid 2\nS1\n"), &m).is_equivalent());
        assert!(rewrite_equivalent(&w("braid 2\nt1\n"), &w("braid 3\nt1 s2\n"), &m).is_equivalent());
    }

    #[test]
    fn certificate_chains_are_single_rewrites() {
        let Verdict::Equivalent(steps) = eq("braid 3\ns1 s2 s1 t2\n", "braid 3\ns2 s1 s2 t2\n") else { panic!() };
        assert_eq!(steps.first().unwrap().word.letters.len(), 4);
        assert!(steps.len() >= 2);
    }
}
