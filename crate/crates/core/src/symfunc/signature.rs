use std::fmt;

use crate::error::{Error, Result};

/// Weakly decreasing tuple of nonnegative integers, trailing zeros removed.
///
/// Ordering is lexicographic on the zero-padded parts, which restricted to a
/// fixed weight is a linear extension of dominance.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Signature(Vec<u32>);

impl Signature {
    pub fn empty() -> Self {
        Signature(Vec::new())
    }

    pub fn new(parts: &[u32]) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParams(format!("signature {parts:?} is not weakly decreasing")));
        }
        Ok(Self::from_sorted(parts.to_vec()))
    }

    /// Sorts the parts into decreasing order.
    pub fn from_unsorted(parts: &[u32]) -> Self {
        let mut v = parts.to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(v)
    }

    fn from_sorted(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Signature(v)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn first(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn part(&self, j: usize) -> u32 {
        self.0.get(j).copied().unwrap_or(0)
    }

    pub fn padded(&self, r: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(r.max(v.len()), 0);
        v
    }

    /// m + (k,…,k) in r parts.
    pub fn add_const(&self, r: usize, k: u32) -> Self {
        Self::from_sorted(self.padded(r).iter().map(|x| x + k).collect())
    }

    /// m − (k,…,k) in r parts, if nonnegative.
    pub fn sub_const(&self, r: usize, k: u32) -> Option<Self> {
        let p = self.padded(r);
        if p.len() > r || p.iter().any(|&x| x < k) {
            return None;
        }
        Some(Self::from_sorted(p.iter().map(|x| x - k).collect()))
    }

    /// Dominance order on signatures of equal weight.
    pub fn dominates(&self, o: &Signature) -> bool {
        if self.weight() != o.weight() {
            return false;
        }
        let n = self.len().max(o.len());
        let (mut s, mut t) = (0u32, 0u32);
        for j in 0..n {
            s += self.part(j);
            t += o.part(j);
            if s < t {
                return false;
            }
        }
        true
    }

    /// Multiplicities of each distinct part value, zeros excluded.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            out.push((j - i) as u32);
            i = j;
        }
        out
    }

    /// Parse "2,1" / "(2,1)" / "0".
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Ok(Self::empty());
        }
        let parts: std::result::Result<Vec<u32>, _> = t.split(',').map(|x| x.trim().parse::<u32>()).collect();
        let parts = parts.map_err(|_| Error::Parse(format!("malformed signature '{s}'")))?;
        Self::new(&parts)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.0.clone()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(0)");
        }
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All signatures with |m| ≤ max_weight, m₁ ≤ max_first and at most max_parts parts.
pub fn gen_signatures(max_weight: Option<u32>, max_first: u32, max_parts: usize) -> Vec<Signature> {
    let cap = max_weight.unwrap_or(u32::MAX);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(cur: &mut Vec<u32>, bound: u32, left: u32, parts: usize, out: &mut Vec<Signature>) {
        out.push(Signature(cur.clone()));
        if cur.len() == parts {
            return;
        }
        for v in 1..=bound.min(left) {
            cur.push(v);
            rec(cur, v, left - v, parts, out);
            cur.pop();
        }
    }
    rec(&mut cur, max_first, cap, max_parts, &mut out);
    out.sort();
    out
}

/// Partitions of n with any number of parts.
pub fn partitions(n: u32) -> Vec<Signature> {
    gen_signatures(Some(n), n, n as usize).into_iter().filter(|s| s.weight() == n).collect()
}

/// Distinct permutations of a vector (lexicographic enumeration).
pub fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        if n < 2 {
            return out;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Number of distinct permutations of the signature padded to r entries.
pub fn orbit_size(s: &Signature, r: usize) -> u64 {
    let p = s.padded(r);
    let mut counts = std::collections::BTreeMap::new();
    for x in &p {
        *counts.entry(*x).or_insert(0u64) += 1;
    }
    let mut n: u64 = (1..=p.len() as u64).product();
    for c in counts.values() {
        n /= (1..=*c).product::<u64>();
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: &[u32]) -> Signature {
        Signature::new(p).unwrap()
    }

    #[test]
    fn generation_examples() {
        let g = gen_signatures(None, 2, 3);
        let expect: Vec<Signature> = [
            &[][..], &[1], &[1, 1], &[1, 1, 1], &[2], &[2, 1], &[2, 1, 1], &[2, 2], &[2, 2, 1], &[2, 2, 2],
        ]
        .iter()
        .map(|p| sig(p))
        .collect();
        assert_eq!(g, expect);
        assert_eq!(gen_signatures(Some(1), 3, 2), vec![sig(&[]), sig(&[1])]);
        assert_eq!(gen_signatures(Some(0), 0, 4), vec![sig(&[])]);
    }

    #[test]
    fn basic_properties() {
        assert!(Signature::new(&[1, 2]).is_err());
        assert_eq!(sig(&[2, 1, 0]).len(), 2);
        assert_eq!(sig(&[3, 1]).weight(), 4);
        assert!(sig(&[3, 1]).dominates(&sig(&[2, 2])));
        assert!(!sig(&[2, 2]).dominates(&sig(&[3, 1])));
        assert!(!sig(&[3, 3]).dominates(&sig(&[4, 1, 1])));
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(8).len(), 22);
        assert_eq!(orbit_size(&sig(&[1]), 3), 3);
        assert_eq!(distinct_permutations(&[1, 0, 0]).len(), 3);
        assert_eq!(Signature::parse("2,1").unwrap(), sig(&[2, 1]));
        assert_eq!(sig(&[2, 1]).add_const(3, 1), sig(&[3, 2, 1]));
        assert_eq!(sig(&[3, 2, 1]).sub_const(3, 1), Some(sig(&[2, 1])));
        assert_eq!(sig(&[]).to_string(), "(0)");
    }

    #[test]
    fn dominance_extends_to_order() {
        for n in 1..=8 {
            let ps = partitions(n);
            for a in &ps {
                for b in &ps {
                    if a.dominates(b) {
                        assert!(a >= b);
                    }
                }
            }
        }
    }
}
