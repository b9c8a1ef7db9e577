//! Operator tables `M`, `R` and the checks of operator (left) residuation.
//!
//! Two constructions are provided:
//!
//! * cone scheme: `M(x,y) = L(U(x,y'),y)`, `R(x,y) = L(U(L(y,x),x'))`
//! * meet scheme: `M(x,y) = L(x,y)`, `R(x,y) = L(U(y,x'))`
//!
//! Identities between tables are checked as equality of computed subsets.

use std::fmt;
use std::str::FromStr;

use crate::classify::{is_complementation, is_lattice, is_pseudo_orthomodular};
use crate::error::{Error, Result};
use crate::poset::{Poset, StructuredPoset};
use crate::subset::Subset;
use crate::witness::{pairs, triples, Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Cone,
    Meet,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Cone => "cone",
            Scheme::Meet => "meet",
        })
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cone" => Ok(Scheme::Cone),
            "meet" => Ok(Scheme::Meet),
            _ => Err(format!("unknown scheme `{s}` (expected cone or meet)")),
        }
    }
}

/// `M` and `R` tabulated over `P × P`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorTable {
    pub scheme: Scheme,
    n: usize,
    m: Vec<Subset>,
    r: Vec<Subset>,
}

impl OperatorTable {
    pub fn m(&self, x: usize, y: usize) -> Subset {
        self.m[x * self.n + y]
    }

    pub fn r(&self, x: usize, y: usize) -> Subset {
        self.r[x * self.n + y]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

pub fn build_operators(sp: &StructuredPoset, scheme: Scheme) -> Result<OperatorTable> {
    let p = &sp.poset;
    p.bounds()?;
    let n = p.len();
    let mut m = Vec::with_capacity(n * n);
    let mut r = Vec::with_capacity(n * n);
    for x in 0..n {
        let xp = sp.prime(x);
        for y in 0..n {
            let yp = sp.prime(y);
            let xy = Subset::single(x).with(y);
            match scheme {
                Scheme::Cone => {
                    m.push(p.lower(p.upper(Subset::single(x).with(yp)).with(y)));
                    r.push(p.lower(p.upper(p.lower(xy).with(xp))));
                }
                Scheme::Meet => {
                    m.push(p.lower(xy));
                    r.push(p.lower(p.upper(Subset::single(y).with(xp))));
                }
            }
        }
    }
    Ok(OperatorTable { scheme, n, m, r })
}

/// Results of checking the three clauses of operator left residuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    /// `M(x,1) = M(1,x) = L(x)`
    pub unit: Verdict,
    /// `M(x,y) ⊆ L(z) ⟹ L(x) ⊆ R(y,z)`
    pub adjoint_forward: Verdict,
    /// `L(x) ⊆ R(y,z) ⟹ M(x,y) ⊆ L(z)`
    pub adjoint_backward: Verdict,
    /// `R(x,0) = L(x')`
    pub zero: Verdict,
    pub commutative: Verdict,
}

impl AxiomReport {
    /// The biconditional; the forward witness is reported first.
    pub fn adjointness(&self) -> Verdict {
        self.adjoint_forward.clone().and(self.adjoint_backward.clone())
    }

    pub fn left_residuated(&self) -> bool {
        self.unit.holds && self.adjoint_forward.holds && self.adjoint_backward.holds && self.zero.holds
    }

    pub fn residuated(&self) -> bool {
        self.left_residuated() && self.commutative.holds
    }
}

/// Forward half of operator left adjointness at one triple.
pub(crate) fn adjoint_forward_at(p: &Poset, t: &OperatorTable, x: usize, y: usize, z: usize) -> Option<Witness> {
    let (m, lz, lx, r) = (t.m(x, y), p.down(z), p.down(x), t.r(y, z));
    (m.is_subset(lz) && !lx.is_subset(r))
        .then(|| adjoint_witness("M(x,y)⊆L(z) ⟹ L(x)⊆R(y,z)", [x, y, z], [m, lz, lx, r]))
}

pub(crate) fn adjoint_backward_at(p: &Poset, t: &OperatorTable, x: usize, y: usize, z: usize) -> Option<Witness> {
    let (m, lz, lx, r) = (t.m(x, y), p.down(z), p.down(x), t.r(y, z));
    (lx.is_subset(r) && !m.is_subset(lz))
        .then(|| adjoint_witness("L(x)⊆R(y,z) ⟹ M(x,y)⊆L(z)", [x, y, z], [m, lz, lx, r]))
}

fn adjoint_witness(clause: &'static str, [x, y, z]: [usize; 3], [m, lz, lx, r]: [Subset; 4]) -> Witness {
    Witness::new(clause)
        .elem("x", x)
        .elem("y", y)
        .elem("z", z)
        .side("M(x,y)", m)
        .side("L(z)", lz)
        .side("L(x)", lx)
        .side("R(y,z)", r)
}

pub fn verify_axioms(sp: &StructuredPoset, t: &OperatorTable) -> Result<AxiomReport> {
    let p = &sp.poset;
    let (bot, top) = p.bounds()?;
    let n = p.len();
    let unit = (0..n).find_map(|x| {
        let lx = p.down(x);
        if t.m(x, top) != lx {
            Some(Witness::new("M(x,1)=L(x)").elem("x", x).side("M(x,1)", t.m(x, top)).side("L(x)", lx))
        } else if t.m(top, x) != lx {
            Some(Witness::new("M(1,x)=L(x)").elem("x", x).side("M(1,x)", t.m(top, x)).side("L(x)", lx))
        } else {
            None
        }
    });
    let zero = (0..n).find_map(|x| {
        let lxp = p.down(sp.prime(x));
        (t.r(x, bot) != lxp)
            .then(|| Witness::new("R(x,0)=L(x')").elem("x", x).side("R(x,0)", t.r(x, bot)).side("L(x')", lxp))
    });
    let commutative = pairs(n, |x, y| {
        (t.m(x, y) != t.m(y, x)).then(|| {
            Witness::new("M(x,y)=M(y,x)").elem("x", x).elem("y", y).side("M(x,y)", t.m(x, y)).side("M(y,x)", t.m(y, x))
        })
    });
    Ok(AxiomReport {
        unit: Verdict::from_search(unit),
        adjoint_forward: Verdict::from_search(triples(n, |x, y, z| adjoint_forward_at(p, t, x, y, z))),
        adjoint_backward: Verdict::from_search(triples(n, |x, y, z| adjoint_backward_at(p, t, x, y, z))),
        zero: Verdict::from_search(zero),
        commutative: Verdict::from_search(commutative),
    })
}

/// `R(x,y) = P ⟺ x <= y` for all pairs.
pub fn verify_divisibility_lemma(sp: &StructuredPoset, t: &OperatorTable) -> Verdict {
    let p = &sp.poset;
    let all = p.all();
    Verdict::from_search(pairs(p.len(), |x, y| {
        ((t.r(x, y) == all) != p.leq(x, y)).then(|| {
            Witness::new("R(x,y)=P ⟺ x≤y").elem("x", x).elem("y", y).side("R(x,y)", t.r(x, y)).side("L(y)", p.down(y))
        })
    }))
}

/// Mutual definability of `M` and `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefinabilityReport {
    /// Pseudo-orthomodular (cone scheme) or complementation (meet scheme).
    pub hypothesis_met: bool,
    /// `L((M(y',x))') = R(x,y)`
    pub r_from_m: Verdict,
    /// `L((R(y,x'))') = M(x,y)`
    pub m_from_r: Verdict,
}

impl DefinabilityReport {
    pub fn holds(&self) -> bool {
        self.r_from_m.holds && self.m_from_r.holds
    }
}

/// Runs both identities whether or not the hypothesis holds.
pub fn verify_mutual_definability(sp: &StructuredPoset, scheme: Scheme) -> Result<DefinabilityReport> {
    let t = build_operators(sp, scheme)?;
    let hypothesis_met = match scheme {
        Scheme::Cone => is_pseudo_orthomodular(sp)?.holds(),
        Scheme::Meet => is_complementation(sp)?.holds,
    };
    let p = &sp.poset;
    let r_from_m = pairs(p.len(), |x, y| {
        let lhs = p.lower(sp.op.image(t.m(sp.prime(y), x)));
        let rhs = t.r(x, y);
        (lhs != rhs)
            .then(|| Witness::new("L((M(y',x))')=R(x,y)").elem("x", x).elem("y", y).side("lhs", lhs).side("rhs", rhs))
    });
    let m_from_r = pairs(p.len(), |x, y| {
        let lhs = p.lower(sp.op.image(t.r(y, sp.prime(x))));
        let rhs = t.m(x, y);
        (lhs != rhs)
            .then(|| Witness::new("L((R(y,x'))')=M(x,y)").elem("x", x).elem("y", y).side("lhs", lhs).side("rhs", rhs))
    });
    Ok(DefinabilityReport {
        hypothesis_met,
        r_from_m: Verdict::from_search(r_from_m),
        m_from_r: Verdict::from_search(m_from_r),
    })
}

/// `x⊙y = (x∨y')∧y` and `x→y = (y∧x)∨x'` on a lattice with complementation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeResiduationTable {
    n: usize,
    odot: Vec<usize>,
    arrow: Vec<usize>,
}

impl LatticeResiduationTable {
    pub fn odot(&self, x: usize, y: usize) -> usize {
        self.odot[x * self.n + y]
    }

    pub fn arrow(&self, x: usize, y: usize) -> usize {
        self.arrow[x * self.n + y]
    }
}

pub fn build_lattice_residuation(sp: &StructuredPoset) -> Result<LatticeResiduationTable> {
    let p = &sp.poset;
    if let Some(w) = is_lattice(p).witness {
        let name = |v| p.name(w.elem_of(v).unwrap_or(0)).to_string();
        return Err(Error::NotALattice(name("x"), name("y")));
    }
    if !is_complementation(sp)?.holds {
        return Err(Error::NotComplemented);
    }
    let n = p.len();
    let join = |a, b| p.join(a, b).expect("lattice");
    let meet = |a, b| p.meet(a, b).expect("lattice");
    let mut odot = Vec::with_capacity(n * n);
    let mut arrow = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            odot.push(meet(join(x, sp.prime(y)), y));
            arrow.push(join(meet(y, x), sp.prime(x)));
        }
    }
    Ok(LatticeResiduationTable { n, odot, arrow })
}

/// `x⊙y ≤ z ⟺ x ≤ y→z` over all triples.
pub fn verify_left_adjointness_lattice(sp: &StructuredPoset, t: &LatticeResiduationTable) -> Verdict {
    let p = &sp.poset;
    Verdict::from_search(triples(p.len(), |x, y, z| {
        let prod = t.odot(x, y);
        let imp = t.arrow(y, z);
        (p.leq(prod, z) != p.leq(x, imp)).then(|| {
            Witness::new("x⊙y≤z ⟺ x≤y→z")
                .elem("x", x)
                .elem("y", y)
                .elem("z", z)
                .side("L(x⊙y)", p.down(prod))
                .side("L(z)", p.down(z))
                .side("L(x)", p.down(x))
                .side("L(y→z)", p.down(imp))
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn meet_scheme_unit_row() {
        for sp in fixtures::all() {
            let t = build_operators(&sp, Scheme::Meet).unwrap();
            let top = sp.poset.top().unwrap();
            for x in 0..sp.len() {
                assert_eq!(t.m(x, top), sp.poset.down(x), "{}", sp.name);
            }
        }
    }

    #[test]
    fn cone_scheme_unit_row_when_top_maps_to_bottom() {
        for sp in fixtures::all() {
            let t = build_operators(&sp, Scheme::Cone).unwrap();
            let top = sp.poset.top().unwrap();
            for x in 0..sp.len() {
                assert_eq!(t.m(x, top), sp.poset.down(x), "{}", sp.name);
            }
        }
    }

    #[test]
    fn boole4_meet_values() {
        let sp = fixtures::load("boole4").unwrap();
        let p = &sp.poset;
        let (a, ap) = (p.index_of("a").unwrap(), p.index_of("a'").unwrap());
        let t = build_operators(&sp, Scheme::Meet).unwrap();
        assert_eq!(t.m(a, ap), Subset::single(0));
        assert_eq!(t.r(a, 0), p.down(ap));
    }

    #[test]
    fn reflexive_pairs_have_full_residual() {
        // R(x,x) = L(U(x,x')), which needs U(x,x') = {1}
        for sp in fixtures::all().into_iter().filter(|sp| is_complementation(sp).unwrap().holds) {
            for scheme in [Scheme::Cone, Scheme::Meet] {
                let t = build_operators(&sp, scheme).unwrap();
                for x in 0..sp.len() {
                    assert_eq!(t.r(x, x), sp.poset.all(), "{} {scheme}", sp.name);
                }
            }
        }
    }

    #[test]
    fn tables_are_downsets() {
        for sp in fixtures::all() {
            for scheme in [Scheme::Cone, Scheme::Meet] {
                let t = build_operators(&sp, scheme).unwrap();
                for x in 0..sp.len() {
                    for y in 0..sp.len() {
                        assert!(sp.poset.is_downset(t.m(x, y)));
                        assert!(sp.poset.is_downset(t.r(x, y)));
                        if scheme == Scheme::Cone {
                            assert!(t.m(x, y).is_subset(sp.poset.down(y)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lattice_residuation_on_boole4() {
        let sp = fixtures::load("boole4").unwrap();
        let p = &sp.poset;
        let (a, ap) = (p.index_of("a").unwrap(), p.index_of("a'").unwrap());
        let t = build_lattice_residuation(&sp).unwrap();
        assert_eq!(t.odot(a, ap), 0);
        for x in 0..4 {
            assert_eq!(t.odot(x, 3), x);
            assert_eq!(t.arrow(x, 0), sp.prime(x));
        }
    }

    #[test]
    fn lattice_residuation_requires_lattice() {
        let sp = fixtures::load("fig1").unwrap();
        assert!(matches!(build_lattice_residuation(&sp), Err(Error::NotALattice(..))));
        let m3 = fixtures::load("m3").unwrap();
        assert!(matches!(build_lattice_residuation(&m3), Err(Error::NotComplemented)));
    }

    #[test]
    fn scheme_parse() {
        assert_eq!("cone".parse::<Scheme>().unwrap(), Scheme::Cone);
        assert!("join".parse::<Scheme>().is_err());
    }
}
