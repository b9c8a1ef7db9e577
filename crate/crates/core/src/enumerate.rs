//! Exhaustive generation of small bounded posets with a unary operation,
//! one representative per isomorphism class of the full signature.
//!
//! Posets come in order of increasing linear-extension count, ties broken
//! by the order matrix; operations on each poset in lexicographic order of
//! their image vectors. An operation is emitted only if no automorphism of
//! the poset conjugates it to a lexicographically smaller one.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::classify::{Claim, Predicate};
use crate::error::{Error, Result};
use crate::poset::{Poset, StructuredPoset, UnaryOp};
use crate::subset::Subset;

/// Largest carrier the enumerator accepts.
pub const SIZE_CAP: usize = 7;

const MIDDLE_NAMES: [&str; 5] = ["a", "b", "c", "d", "e"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumSpec {
    pub size: usize,
    pub require: Vec<Predicate>,
    /// Emit one structure per isomorphism class (otherwise every operation
    /// on every representative poset).
    pub canonical: bool,
}

impl EnumSpec {
    pub fn new(size: usize) -> Self {
        EnumSpec { size, require: Vec::new(), canonical: true }
    }

    pub fn require(mut self, p: Predicate) -> Self {
        self.require.push(p);
        self
    }

    fn involutions_only(&self) -> bool {
        self.require.iter().any(|p| p.implies_involution())
    }

    fn top_to_bottom_only(&self) -> bool {
        self.require.iter().any(|p| matches!(p, Predicate::TopToBottom | Predicate::Complementation))
    }
}

/// Partial orders on `m` labelled points with `i < j` whenever `i ≤ j`,
/// one per isomorphism class, as strict up-set bitmasks per point.
fn middle_posets(m: usize) -> Vec<Vec<u32>> {
    let slots: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let perms = permutations(m);
    let mut seen = BTreeMap::new();
    for bits in 0u32..1 << slots.len() {
        let mut above = vec![0u32; m];
        for (k, &(i, j)) in slots.iter().enumerate() {
            if bits >> k & 1 == 1 {
                above[i] |= 1 << j;
            }
        }
        let transitive = (0..m).all(|i| (0..m).filter(|&j| above[i] >> j & 1 == 1).all(|j| above[j] & !above[i] == 0));
        if !transitive {
            continue;
        }
        let key = perms
            .iter()
            .map(|perm| {
                let mut code = 0u64;
                for i in 0..m {
                    for j in 0..m {
                        if above[i] >> j & 1 == 1 {
                            code |= 1 << (perm[i] * m + perm[j]);
                        }
                    }
                }
                code
            })
            .min()
            .unwrap_or(0);
        seen.entry(key).or_insert(above);
    }
    seen.into_values().collect()
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn linear_extensions(p: &Poset) -> u64 {
    let n = p.len();
    let mut count = vec![0u64; 1 << n];
    count[0] = 1;
    for s in 0..1usize << n {
        if count[s] == 0 {
            continue;
        }
        let placed = Subset::from_bits(s as u64);
        for x in 0..n {
            if !placed.contains(x) && p.down(x).without(x).is_subset(placed) {
                count[s | 1 << x] += count[s];
            }
        }
    }
    count[(1 << n) - 1]
}

fn element_names(size: usize) -> Vec<String> {
    match size {
        1 => vec!["0".into()],
        _ => std::iter::once("0")
            .chain(MIDDLE_NAMES[..size - 2].iter().copied())
            .chain(std::iter::once("1"))
            .map(String::from)
            .collect(),
    }
}

/// Every bounded poset of the given size up to isomorphism, in generation
/// order. Index 0 is the bottom and the last index the top.
pub fn bounded_posets(size: usize) -> Result<Vec<Arc<Poset>>> {
    if size == 0 || size > SIZE_CAP {
        return Err(Error::SizeCapExceeded { size, cap: SIZE_CAP });
    }
    let names = element_names(size);
    if size == 1 {
        return Ok(vec![Arc::new(Poset::from_up_sets(names, vec![Subset::single(0)])?)]);
    }
    let m = size - 2;
    let top = size - 1;
    let mut out = Vec::new();
    for above in middle_posets(m) {
        let mut up = vec![Subset::full(size)];
        for (i, row) in above.iter().enumerate() {
            let strict: Subset = (0..m).filter(|&j| row >> j & 1 == 1).map(|j| j + 1).collect();
            up.push(strict.with(i + 1).with(top));
        }
        up.push(Subset::single(top));
        let p = Poset::from_up_sets(names.clone(), up)?;
        let matrix: Vec<bool> =
            (0..size).flat_map(|i| (0..size).map(move |j| (i, j))).map(|(i, j)| p.leq(i, j)).collect();
        out.push((linear_extensions(&p), matrix, p));
    }
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(out.into_iter().map(|(_, _, p)| Arc::new(p)).collect())
}

/// Order automorphisms of `p`, identity first.
pub fn automorphisms(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut auts: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .filter(|phi| (0..n).all(|i| (0..n).all(|j| p.leq(i, j) == p.leq(phi[i], phi[j]))))
        .collect();
    auts.sort();
    auts
}

/// `φ ∘ op ∘ φ⁻¹`
pub fn conjugate(op: &[usize], phi: &[usize]) -> Vec<usize> {
    let mut out = vec![0; op.len()];
    for (i, &img) in op.iter().enumerate() {
        out[phi[i]] = phi[img];
    }
    out
}

/// Lazily yields the structures selected by an [`EnumSpec`].
pub struct Enumerator {
    spec: EnumSpec,
    posets: Vec<Arc<Poset>>,
    auts: Vec<Vec<Vec<usize>>>,
    poset_idx: usize,
    op: Option<Vec<usize>>,
}

impl Enumerator {
    fn advance(&mut self) -> Option<(usize, Vec<usize>)> {
        let n = self.spec.size;
        loop {
            if self.poset_idx >= self.posets.len() {
                return None;
            }
            let next = match self.op.take() {
                None => Some(vec![0; n]),
                Some(mut op) => {
                    // odometer, last position fastest
                    let mut k = n;
                    loop {
                        if k == 0 {
                            break None;
                        }
                        k -= 1;
                        op[k] += 1;
                        if op[k] < n {
                            break Some(op);
                        }
                        op[k] = 0;
                    }
                }
            };
            match next {
                Some(op) => {
                    self.op = Some(op.clone());
                    return Some((self.poset_idx, op));
                }
                None => {
                    self.poset_idx += 1;
                    self.op = None;
                }
            }
        }
    }

    fn admissible(&self, idx: usize, op: &[usize]) -> bool {
        let n = op.len();
        if self.spec.involutions_only() && (0..n).any(|i| op[op[i]] != i) {
            return false;
        }
        if self.spec.top_to_bottom_only() && op[n - 1] != 0 {
            return false;
        }
        !self.spec.canonical || self.auts[idx][1..].iter().all(|phi| conjugate(op, phi).as_slice() >= op)
    }
}

impl Iterator for Enumerator {
    type Item = StructuredPoset;

    fn next(&mut self) -> Option<StructuredPoset> {
        loop {
            let (idx, op) = self.advance()?;
            if !self.admissible(idx, &op) {
                continue;
            }
            let digits: String = op.iter().map(|d| char::from(b'0' + *d as u8)).collect();
            let name = format!("n{}p{}o{}", self.spec.size, idx, digits);
            let sp = StructuredPoset::new(name, Arc::clone(&self.posets[idx]), UnaryOp::new(op));
            if self.spec.require.iter().all(|p| p.evaluate(&sp)) {
                return Some(sp);
            }
        }
    }
}

pub fn enumerate_structured(spec: &EnumSpec) -> Result<Enumerator> {
    let posets = bounded_posets(spec.size)?;
    let auts = posets.iter().map(|p| automorphisms(p)).collect();
    Ok(Enumerator { spec: spec.clone(), posets, auts, poset_idx: 0, op: None })
}

/// Enumerates every size from 1 through `max_size`.
pub fn enumerate_up_to(max_size: usize, require: &[Predicate]) -> Result<impl Iterator<Item = StructuredPoset>> {
    let streams = (1..=max_size)
        .map(|size| enumerate_structured(&EnumSpec { size, require: require.to_vec(), canonical: true }))
        .collect::<Result<Vec<_>>>()?;
    Ok(streams.into_iter().flatten())
}

/// First structure of size `1..=spec.size` (then among `extra`) violating
/// `claim`.
pub fn find_counterexample(
    spec: &EnumSpec,
    claim: &Claim,
    extra: &[StructuredPoset],
) -> Result<Option<StructuredPoset>> {
    let mut require = spec.require.clone();
    if claim.premise.iter().any(|p| p.implies_involution()) {
        require.push(Predicate::Involution);
    }
    for size in 1..=spec.size {
        let sub = EnumSpec { size, require: require.clone(), canonical: spec.canonical };
        if let Some(sp) = enumerate_structured(&sub)?.find(|sp| !claim.holds_on(sp)) {
            return Ok(Some(sp));
        }
    }
    Ok(extra.iter().find(|sp| !claim.holds_on(sp)).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounded_poset_counts() {
        // bounded posets of size n correspond to posets of size n-2
        let counts: Vec<usize> = (1..=7).map(|n| bounded_posets(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn size_cap() {
        assert!(matches!(bounded_posets(8), Err(Error::SizeCapExceeded { size: 8, cap: 7 })));
        assert!(matches!(bounded_posets(0), Err(Error::SizeCapExceeded { .. })));
    }

    #[test]
    fn singleton_structure() {
        let all: Vec<_> = enumerate_structured(&EnumSpec::new(1)).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].op.as_slice(), &[0]);
    }

    #[test]
    fn two_element_complementation() {
        let spec = EnumSpec::new(2).require(Predicate::Complementation);
        let all: Vec<_> = enumerate_structured(&spec).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].op.as_slice(), &[1, 0]);
    }

    #[test]
    fn chain_goes_first() {
        let ps = bounded_posets(5).unwrap();
        assert_eq!(linear_extensions(&ps[0]), 1);
        assert_eq!(linear_extensions(&ps[4]), 6);
    }

    #[test]
    fn conjugation_respects_composition() {
        let op = [2, 0, 1];
        let phi = [1, 2, 0];
        let c = conjugate(&op, &phi);
        for i in 0..3 {
            assert_eq!(c[phi[i]], phi[op[i]]);
        }
    }
}
