//! Structural invariants of a group table: center and centralizers,
//! conjugacy classes, per-element commutator sets `[x, G]`, the commutator
//! set `K(G)` and derived subgroup, the upper central series, exponents,
//! and generating sets of quotients.

use num_integer::Integer;

use crate::group::{Elem, GroupTable, Quotient, Subgroup};
use crate::{Error, Result};

/// `Z(G)`: everything that commutes with the whole group.
pub fn center(g: &GroupTable) -> Subgroup {
    let members: Vec<Elem> = (0..g.order() as Elem)
        .filter(|&z| (0..g.order() as Elem).all(|x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    g.subgroup_from_members(members)
}

/// `C_G(x)`.
pub fn centralizer(g: &GroupTable, x: Elem) -> Subgroup {
    let members: Vec<Elem> = (0..g.order() as Elem)
        .filter(|&a| g.mul(a, x) == g.mul(x, a))
        .collect();
    g.subgroup_from_members(members)
}

/// `C_G(H)`, computed from the subgroup's generators (an element commutes
/// with all of `H` exactly when it commutes with a generating set).
pub fn centralizer_of_subgroup(g: &GroupTable, h: &Subgroup) -> Subgroup {
    let members: Vec<Elem> = (0..g.order() as Elem)
        .filter(|&a| h.generators().iter().all(|&x| g.mul(a, x) == g.mul(x, a)))
        .collect();
    g.subgroup_from_members(members)
}

/// Sorted set `[x, G] = { [x, g] : g in G }`.
pub fn commutator_set(g: &GroupTable, x: Elem) -> Vec<Elem> {
    let mut set: Vec<Elem> = (0..g.order() as Elem).map(|y| g.commutator(x, y)).collect();
    set.sort_unstable();
    set.dedup();
    set
}

/// Sorted conjugacy class `x^G`.
pub fn conjugacy_class(g: &GroupTable, x: Elem) -> Vec<Elem> {
    let mut class: Vec<Elem> = (0..g.order() as Elem).map(|y| g.conjugate(x, y)).collect();
    class.sort_unstable();
    class.dedup();
    class
}

/// `gamma_2(G)`: the subgroup generated by all commutators.
pub fn derived_subgroup(g: &GroupTable) -> Subgroup {
    let n = g.order();
    let mut present = vec![false; n];
    for x in 0..n as Elem {
        for y in 0..n as Elem {
            present[g.commutator(x, y) as usize] = true;
        }
    }
    let commutators: Vec<Elem> = (0..n as Elem).filter(|&e| present[e as usize]).collect();
    g.subgroup_closure(&commutators)
        .expect("commutator values are valid indices")
}

/// Commutator structure of a group: the conjugacy class partition, every
/// `[x, G]`, the commutator set `K(G)`, the derived subgroup it generates,
/// and the breadth (largest class size).
#[derive(Debug, Clone)]
pub struct CommutatorData {
    /// Conjugacy classes, ordered by smallest member; each sorted.
    pub classes: Vec<Vec<Elem>>,
    /// Class id of each element, indexing into `classes`.
    pub class_of: Vec<u32>,
    /// `[x, G]` for every element, sorted.
    pub commutator_sets: Vec<Vec<Elem>>,
    /// `K(G)`: union of all commutator sets, sorted.
    pub commutator_set: Vec<Elem>,
    /// `gamma_2(G) = <K(G)>`.
    pub gamma2: Subgroup,
    /// Largest conjugacy class size.
    pub breadth: usize,
    /// Whether `K(G)` is already the whole derived subgroup.
    pub k_equals_gamma2: bool,
}

impl CommutatorData {
    pub fn class_size(&self, x: Elem) -> usize {
        self.classes[self.class_of[x as usize] as usize].len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }
}

pub fn commutator_data(g: &GroupTable) -> CommutatorData {
    let n = g.order();
    let mut class_of = vec![u32::MAX; n];
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    for x in 0..n as Elem {
        if class_of[x as usize] != u32::MAX {
            continue;
        }
        let class = conjugacy_class(g, x);
        let id = classes.len() as u32;
        for &y in &class {
            class_of[y as usize] = id;
        }
        classes.push(class);
    }
    let commutator_sets: Vec<Vec<Elem>> =
        (0..n as Elem).map(|x| commutator_set(g, x)).collect();
    let mut union: Vec<Elem> = commutator_sets.iter().flatten().copied().collect();
    union.sort_unstable();
    union.dedup();
    let gamma2 = g
        .subgroup_closure(&union)
        .expect("commutator values are valid indices");
    let breadth = classes.iter().map(|c| c.len()).max().unwrap_or(1);
    let k_equals_gamma2 = union.len() == gamma2.order();
    CommutatorData {
        classes,
        class_of,
        commutator_sets,
        commutator_set: union,
        gamma2,
        breadth,
        k_equals_gamma2,
    }
}

/// The upper central series `1 = Z_0 <= Z(G) <= Z_2(G) <= ...`. Terms stop
/// at the whole group (nilpotent) or repeat the stabilized term once.
#[derive(Debug, Clone)]
pub struct CentralSeries {
    pub terms: Vec<Subgroup>,
    pub nilpotency_class: Option<usize>,
}

impl CentralSeries {
    /// `Z(G)`, the first term above the trivial one.
    pub fn center(&self) -> &Subgroup {
        &self.terms[1.min(self.terms.len() - 1)]
    }

    /// `Z_2(G)`. For series that stabilize early this is the stable term.
    pub fn second_center(&self) -> &Subgroup {
        &self.terms[2.min(self.terms.len() - 1)]
    }

    pub fn stabilized(&self) -> bool {
        self.terms.len() >= 2
    }
}

/// Iterates `Z_{i+1} =` preimage of `Z(G / Z_i)` until the series reaches
/// the whole group or stops growing.
pub fn upper_central_series(g: &GroupTable) -> CentralSeries {
    let mut terms = vec![g.trivial_subgroup()];
    loop {
        let last = terms.last().unwrap();
        let q = g
            .quotient(last)
            .expect("upper central terms are normal");
        let zq = center(&q.table);
        let members: Vec<Elem> = (0..g.order() as Elem)
            .filter(|&x| zq.contains(q.projection.apply(x)))
            .collect();
        let next = g.subgroup_from_members(members);
        if next.order() == g.order() {
            terms.push(next);
            let class = terms.len() - 1;
            return CentralSeries { terms, nilpotency_class: Some(class) };
        }
        if next.order() == last.order() {
            terms.push(next);
            return CentralSeries { terms, nilpotency_class: None };
        }
        terms.push(next);
    }
}

/// `Z_2(G)` without computing the rest of the series.
pub fn second_center(g: &GroupTable) -> Subgroup {
    let z = center(g);
    let q = g.quotient(&z).expect("the center is normal");
    let zq = center(&q.table);
    let members: Vec<Elem> = (0..g.order() as Elem)
        .filter(|&x| zq.contains(q.projection.apply(x)))
        .collect();
    g.subgroup_from_members(members)
}

/// `exp` of a member set: least common multiple of the element orders.
pub fn exponent(g: &GroupTable, members: &[Elem]) -> u64 {
    members
        .iter()
        .fold(1u64, |acc, &x| acc.lcm(&(g.element_order(x) as u64)))
}

/// Exponent of the whole group.
pub fn group_exponent(g: &GroupTable) -> u64 {
    exponent(g, &(0..g.order() as Elem).collect::<Vec<_>>())
}

/// When `[x, G]` is contained in the center it is itself a subgroup; this
/// checks the hypothesis and returns the raw set as a subgroup, verifying
/// (not forcing) its closure.
pub fn commutator_set_subgroup(g: &GroupTable, x: Elem) -> Result<Subgroup> {
    let z = center(g);
    let set = commutator_set(g, x);
    for &c in &set {
        if !z.contains(c) {
            return Err(Error::Hypothesis {
                name: "[x,G] contained in Z(G)",
                witness: format!("commutator {c} of element {x} lies outside the center"),
            });
        }
    }
    let contains = |e: Elem| set.binary_search(&e).is_ok();
    for &a in &set {
        if !contains(g.inv(a)) {
            return Err(Error::internal(
                "central commutator set closure",
                format!("inverse of {a} escapes [{x},G]"),
            ));
        }
        for &b in &set {
            if !contains(g.mul(a, b)) {
                return Err(Error::internal(
                    "central commutator set closure",
                    format!("product of {a} and {b} escapes [{x},G]"),
                ));
            }
        }
    }
    Ok(g.subgroup_from_members(set))
}

/// A minimal generating set of an abelian quotient together with the
/// invariant factors: representatives `x_1, ..., x_t` in the quotient's
/// parent whose cosets have orders `d_1 >= d_2 >= ...` with `d_{i+1} | d_i`
/// and `prod d_i = |Q|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianBasis {
    /// Coset representatives in the parent group of the quotient.
    pub basis: Vec<Elem>,
    /// Orders of the basis cosets in the quotient group.
    pub orders: Vec<u64>,
}

/// Greedy invariant-factor extraction: repeatedly pick an element whose
/// coset in the remaining quotient has maximal order (and whose own order
/// in the quotient group equals it, so the orders really are the invariant
/// factors), then quotient it out.
pub fn abelian_basis(q: &Quotient) -> Result<AbelianBasis> {
    let a = &q.table;
    for x in 0..a.order() as Elem {
        for y in (x + 1)..a.order() as Elem {
            if a.mul(x, y) != a.mul(y, x) {
                return Err(Error::NotAbelian { a: x as usize, b: y as usize });
            }
        }
    }
    let mut sub = vec![false; a.order()];
    sub[0] = true;
    let mut sub_size = 1usize;
    let coset_order = |sub: &[bool], x: Elem| -> usize {
        let mut k = 1;
        let mut p = x;
        while !sub[p as usize] {
            p = a.mul(p, x);
            k += 1;
        }
        k
    };
    let mut basis = Vec::new();
    let mut orders = Vec::new();
    while sub_size < a.order() {
        let d = (0..a.order() as Elem)
            .map(|x| coset_order(&sub, x))
            .max()
            .unwrap();
        let pick = (0..a.order() as Elem)
            .find(|&x| coset_order(&sub, x) == d && a.element_order(x) == d)
            .ok_or_else(|| {
                Error::internal(
                    "invariant factor extraction",
                    "no coset representative of full order exists",
                )
            })?;
        basis.push(pick);
        orders.push(d as u64);
        // enlarge the accumulated subgroup by <pick>
        let mut grown = Vec::new();
        for e in 0..a.order() as Elem {
            if sub[e as usize] {
                let mut p = e;
                loop {
                    if !sub[p as usize] {
                        grown.push(p);
                    }
                    p = a.mul(p, pick);
                    if p == e {
                        break;
                    }
                }
            }
        }
        for e in grown {
            if !sub[e as usize] {
                sub[e as usize] = true;
                sub_size += 1;
            }
        }
    }
    let basis = basis.into_iter().map(|x| q.coset_reps[x as usize]).collect();
    Ok(AbelianBasis { basis, orders })
}

/// Greedy generating set for an arbitrary quotient: repeatedly add the
/// coset that most enlarges the generated subgroup (smallest index on
/// ties). Returns coset representatives in the parent. Not guaranteed to
/// be of minimum cardinality.
pub fn generating_cosets(q: &Quotient) -> Vec<Elem> {
    let a = &q.table;
    let mut chosen: Vec<Elem> = Vec::new();
    let mut current = a.subgroup_closure(&chosen).expect("empty seed");
    while current.order() < a.order() {
        // elements already generated can never enlarge the closure, and
        // nothing beats a candidate that reaches the whole quotient
        let mut best: Option<(usize, Elem)> = None;
        for x in 0..a.order() as Elem {
            if current.contains(x) {
                continue;
            }
            let mut seed = chosen.clone();
            seed.push(x);
            let size = a.subgroup_closure(&seed).expect("indices in range").order();
            if best.map_or(true, |(s, _)| size > s) {
                best = Some((size, x));
                if size == a.order() {
                    break;
                }
            }
        }
        let (_, pick) = best.expect("a proper subgroup has elements outside it");
        chosen.push(pick);
        current = a.subgroup_closure(&chosen).expect("indices in range");
    }
    chosen.into_iter().map(|x| q.coset_reps[x as usize]).collect()
}
