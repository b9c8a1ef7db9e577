//! Finite posets, the unary operation `'`, and the cone calculus `L`/`U`.
//!
//! Every cone takes a [`Subset`] argument. Formulas written with several
//! arguments, such as `L(U(x, y'), y)`, union all arguments first (elements
//! become singletons) and then take common bounds:
//!
//! ```
//! use residua::{fixtures, Subset};
//! let sp = fixtures::load("chain2").unwrap();
//! let p = &sp.poset;
//! let (x, y) = (0, 1);
//! let m = p.lower(p.upper(Subset::of(&[x, sp.op.apply(y)])).with(y));
//! assert_eq!(m, Subset::single(0));
//! ```
//!
//! The cone of the empty family is the whole carrier.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_WIDTH};

/// Environment variable that lowers the carrier limit.
pub const CARRIER_CAP_ENV: &str = "RESIDUA_MAX_CARRIER";

/// Carrier limit: `RESIDUA_MAX_CARRIER` if set, otherwise 64.
pub fn carrier_cap() -> Result<usize> {
    match std::env::var(CARRIER_CAP_ENV) {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if (1..=MAX_WIDTH).contains(&n) => Ok(n),
            _ => Err(Error::InvalidCarrierLimit(raw)),
        },
        Err(_) => Ok(MAX_WIDTH),
    }
}

/// A finite partially ordered set.
///
/// The order is stored as principal down-sets and up-sets: `down[i]` holds
/// every `q <= i`, `up[i]` every `q >= i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    down: Vec<Subset>,
    up: Vec<Subset>,
    bottom: Option<usize>,
    top: Option<usize>,
}

impl Poset {
    /// Builds a poset from element names and `[lower, upper]` pairs, taking
    /// the reflexive-transitive closure of the pairs.
    pub fn validate<S: AsRef<str>>(elements: &[S], covers: &[(S, S)], cap: usize) -> Result<Poset> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if n > cap.min(MAX_WIDTH) {
            return Err(Error::CarrierTooLarge { size: n, cap: cap.min(MAX_WIDTH) });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.as_ref(), i).is_some() {
                return Err(Error::DuplicateElement(e.as_ref().to_string()));
            }
        }
        let lookup =
            |name: &str| index.get(name).copied().ok_or_else(|| Error::UnknownElementReference(name.to_string()));
        let mut up: Vec<Subset> = (0..n).map(Subset::single).collect();
        for (lo, hi) in covers {
            let (lo, hi) = (lookup(lo.as_ref())?, lookup(hi.as_ref())?);
            up[lo].insert(hi);
        }
        // Warshall on rows: if k is above i, everything above k is above i.
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i] | up[k];
                }
            }
        }
        let names = elements.iter().map(|e| e.as_ref().to_string()).collect();
        Self::from_up_sets(names, up)
    }

    /// Builds a poset from already closed up-sets, checking antisymmetry.
    pub(crate) fn from_up_sets(names: Vec<String>, up: Vec<Subset>) -> Result<Poset> {
        let n = names.len();
        let mut down = vec![Subset::EMPTY; n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        for i in 0..n {
            if let Some(j) = (up[i] & down[i]).without(i).first() {
                return Err(Error::CycleDetected(names[i].clone(), names[j].clone()));
            }
        }
        let all = Subset::full(n);
        let bottom = (0..n).find(|&i| up[i] == all);
        let top = (0..n).find(|&i| down[i] == all);
        Ok(Poset { names, down, up, bottom, top })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    /// `(bottom, top)`, or [`Error::UnboundedPoset`].
    pub fn bounds(&self) -> Result<(usize, usize)> {
        match (self.bottom, self.top) {
            (Some(b), Some(t)) => Ok((b, t)),
            _ => Err(Error::UnboundedPoset),
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.bottom.is_some() && self.top.is_some()
    }

    pub fn all(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    /// Principal down-set `L(x)`.
    pub fn down(&self, x: usize) -> Subset {
        self.down[x]
    }

    /// Principal up-set `U(x)`.
    pub fn up(&self, x: usize) -> Subset {
        self.up[x]
    }

    /// `L(A)`: common lower bounds of every member of `a`.
    pub fn lower(&self, a: Subset) -> Subset {
        a.iter().fold(self.all(), |acc, x| acc & self.down[x])
    }

    /// `U(A)`: common upper bounds of every member of `a`.
    pub fn upper(&self, a: Subset) -> Subset {
        a.iter().fold(self.all(), |acc, x| acc & self.up[x])
    }

    /// Cone of a family: union the parts, then take common lower bounds.
    pub fn lower_cone(&self, parts: &[Subset]) -> Subset {
        self.lower(parts.iter().fold(Subset::EMPTY, |acc, &s| acc | s))
    }

    pub fn upper_cone(&self, parts: &[Subset]) -> Subset {
        self.upper(parts.iter().fold(Subset::EMPTY, |acc, &s| acc | s))
    }

    /// Least element of `a`, if it has one.
    pub fn least(&self, a: Subset) -> Option<usize> {
        a.iter().find(|&x| a.is_subset(self.up[x]))
    }

    /// Greatest element of `a`, if it has one.
    pub fn greatest(&self, a: Subset) -> Option<usize> {
        a.iter().find(|&x| a.is_subset(self.down[x]))
    }

    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        self.least(self.up[x] & self.up[y])
    }

    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        self.greatest(self.down[x] & self.down[y])
    }

    /// Covering pairs `(lower, upper)` of the Hasse diagram, in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            let above = self.up[x].without(x);
            for y in above.iter() {
                let between = above & self.down[y].without(y);
                if between.is_empty() {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Whether `a` is closed downward.
    pub fn is_downset(&self, a: Subset) -> bool {
        a.iter().all(|x| self.down[x].is_subset(a))
    }

    pub fn is_upset(&self, a: Subset) -> bool {
        a.iter().all(|x| self.up[x].is_subset(a))
    }

    pub fn render(&self, a: Subset) -> String {
        let names: Vec<&str> = a.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(", "))
    }

    pub fn name_list(&self, a: Subset) -> Vec<String> {
        a.iter().map(|i| self.names[i].clone()).collect()
    }
}

/// The unary operation `x ↦ x'` as a total self-map on element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnaryOp(Vec<usize>);

impl UnaryOp {
    pub fn new(map: Vec<usize>) -> Self {
        UnaryOp(map)
    }

    pub fn identity(n: usize) -> Self {
        UnaryOp((0..n).collect())
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `A' = { x' | x in A }`.
    pub fn image(&self, a: Subset) -> Subset {
        a.iter().map(|x| self.0[x]).collect()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Elementwise image of `a` under `op`.
pub fn image_prime(op: &UnaryOp, a: Subset) -> Subset {
    op.image(a)
}

/// A bounded (or not) poset together with a unary operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredPoset {
    pub name: String,
    pub poset: Arc<Poset>,
    pub op: UnaryOp,
}

impl StructuredPoset {
    pub fn new(name: impl Into<String>, poset: Arc<Poset>, op: UnaryOp) -> Self {
        assert_eq!(poset.len(), op.len(), "operation does not match carrier");
        assert!(op.as_slice().iter().all(|&x| x < poset.len()), "operation leaves the carrier");
        StructuredPoset { name: name.into(), poset, op }
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn prime(&self, x: usize) -> usize {
        self.op.apply(x)
    }

    pub fn from_doc(doc: &PosetDoc, cap: usize) -> Result<Self> {
        let covers: Vec<(&str, &str)> = doc.covers.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        let elements: Vec<&str> = doc.elements.iter().map(String::as_str).collect();
        let poset = Poset::validate(&elements, &covers, cap)?;
        for key in doc.op.keys() {
            if poset.index_of(key).is_none() {
                return Err(Error::UnknownElementReference(key.clone()));
            }
        }
        let mut map = Vec::with_capacity(poset.len());
        for name in poset.names() {
            let image = doc.op.get(name).ok_or_else(|| Error::IncompleteOperation(name.clone()))?;
            let j = poset.index_of(image).ok_or_else(|| Error::UnknownElementReference(image.clone()))?;
            map.push(j);
        }
        Ok(StructuredPoset::new(doc.name.clone(), Arc::new(poset), UnaryOp(map)))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PosetDoc = serde_json::from_str(text)?;
        Self::from_doc(&doc, carrier_cap()?)
    }

    /// Exports in the JSON poset format with Hasse covers.
    pub fn to_doc(&self) -> PosetDoc {
        let p = &self.poset;
        PosetDoc {
            name: self.name.clone(),
            elements: p.names().to_vec(),
            covers: p.covers().into_iter().map(|(a, b)| [p.name(a).to_string(), p.name(b).to_string()]).collect(),
            op: (0..p.len()).map(|i| (p.name(i).to_string(), p.name(self.prime(i)).to_string())).collect(),
        }
    }
}

/// On-disk JSON form of a structured poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub name: String,
    pub elements: Vec<String>,
    /// `[lower, upper]` pairs; any generating relation is accepted.
    pub covers: Vec<[String; 2]>,
    pub op: BTreeMap<String, String>,
}
