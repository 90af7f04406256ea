//! Dense Cayley-table representation of finite groups and the exact
//! operations everything else is built on: subgroup closure, quotients,
//! direct products, morphism checking and permutation-group generation.
//!
//! Element indices are `u16`; the identity is always index 0. Tables are
//! immutable after construction and safe to share between threads.

use std::collections::{HashMap, VecDeque};

use crate::{Error, Result};

/// An element index inside a [`GroupTable`].
pub type Elem = u16;

/// A violation found while verifying a multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableDefect {
    #[error("order must be positive")]
    EmptyTable,
    #[error("row {row} has {got} entries, expected {expected}")]
    RowLength { row: usize, got: usize, expected: usize },
    #[error("entry mul[{a}][{b}] = {value} is out of range")]
    EntryRange { a: usize, b: usize, value: usize },
    #[error("index 0 is not an identity at element {x}")]
    IdentityBroken { x: usize },
    #[error("element {x} has no two-sided inverse")]
    InverseMissing { x: usize },
    #[error("associativity fails at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generator {g} is out of range")]
    GeneratorRange { g: usize },
    #[error("generators only reach {reached} of {order} elements")]
    GeneratorsIncomplete { reached: usize, order: usize },
    #[error("labels list has {got} entries, expected {expected}")]
    LabelsLength { got: usize, expected: usize },
}

/// An explicit finite group: a full multiplication table over indices
/// `0..order`, with precomputed inverses, a recorded generating set and
/// optional display labels. Identity is index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    generators: Vec<Elem>,
    labels: Option<Vec<String>>,
}

impl GroupTable {
    /// Builds a table from explicit rows, running the full invariant check
    /// (identity, inverses, associativity, generator closure). This is the
    /// path for externally supplied tables.
    pub fn from_rows(
        rows: &[Vec<usize>],
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<GroupTable> {
        let order = rows.len();
        if order == 0 {
            return Err(TableDefect::EmptyTable.into());
        }
        if order > Elem::MAX as usize {
            return Err(Error::OrderCapExceeded { cap: Elem::MAX as usize });
        }
        let mut mul = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(TableDefect::RowLength {
                    row: i,
                    got: row.len(),
                    expected: order,
                }
                .into());
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(TableDefect::EntryRange { a: i, b: j, value: v }.into());
                }
                mul.push(v as Elem);
            }
        }
        let inv = derive_inverses(order, &mul)?;
        for &g in &generators {
            if g >= order {
                return Err(TableDefect::GeneratorRange { g }.into());
            }
        }
        let table = GroupTable {
            order,
            mul,
            inv,
            generators: generators.iter().map(|&g| g as Elem).collect(),
            labels: None,
        };
        table.verify()?;
        let table = match labels {
            Some(l) => table.with_labels(l)?,
            None => table,
        };
        Ok(table)
    }

    /// Internal constructor for tables that are groups by construction.
    /// Inverses are derived by scanning rows; light sanity checks only.
    pub(crate) fn from_mul_unchecked(
        order: usize,
        mul: Vec<Elem>,
        generators: Vec<Elem>,
    ) -> GroupTable {
        debug_assert_eq!(mul.len(), order * order);
        let inv = derive_inverses(order, &mul)
            .expect("constructed table must have two-sided inverses");
        GroupTable {
            order,
            mul,
            inv,
            generators,
            labels: None,
        }
    }

    /// The one-element group.
    pub fn trivial() -> GroupTable {
        GroupTable {
            order: 1,
            mul: vec![0],
            inv: vec![0],
            generators: Vec::new(),
            labels: None,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Attaches display labels, one per element.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<GroupTable> {
        if labels.len() != self.order {
            return Err(TableDefect::LabelsLength {
                got: labels.len(),
                expected: self.order,
            }
            .into());
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    #[inline]
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conjugate(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    fn check_index(&self, i: usize) -> Result<Elem> {
        if i < self.order {
            Ok(i as Elem)
        } else {
            Err(Error::IndexOutOfRange { index: i, order: self.order })
        }
    }

    /// Index-validated multiplication, for untrusted inputs.
    pub fn try_mul(&self, a: usize, b: usize) -> Result<Elem> {
        Ok(self.mul(self.check_index(a)?, self.check_index(b)?))
    }

    /// Index-validated inverse.
    pub fn try_inv(&self, a: usize) -> Result<Elem> {
        Ok(self.inv(self.check_index(a)?))
    }

    /// Index-validated commutator.
    pub fn try_commutator(&self, x: usize, y: usize) -> Result<Elem> {
        Ok(self.commutator(self.check_index(x)?, self.check_index(y)?))
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut p = x;
        while p != 0 {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    /// `x^k` for `k >= 0`.
    pub fn power(&self, x: Elem, k: usize) -> Elem {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order as Elem {
            for b in (a + 1)..self.order as Elem {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Full invariant check: entry ranges, identity row/column, two-sided
    /// inverses, associativity (O(N^3)) and closure of the recorded
    /// generators. Returns the first violation found.
    pub fn verify(&self) -> std::result::Result<(), TableDefect> {
        let n = self.order;
        if n == 0 {
            return Err(TableDefect::EmptyTable);
        }
        for a in 0..n {
            for b in 0..n {
                let v = self.mul[a * n + b] as usize;
                if v >= n {
                    return Err(TableDefect::EntryRange { a, b, value: v });
                }
            }
        }
        for x in 0..n as Elem {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(TableDefect::IdentityBroken { x: x as usize });
            }
        }
        for x in 0..n as Elem {
            let y = self.inv(x);
            if self.mul(x, y) != 0 || self.mul(y, x) != 0 {
                return Err(TableDefect::InverseMissing { x: x as usize });
            }
        }
        for a in 0..n as Elem {
            for b in 0..n as Elem {
                let ab = self.mul(a, b);
                for c in 0..n as Elem {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(TableDefect::NotAssociative {
                            a: a as usize,
                            b: b as usize,
                            c: c as usize,
                        });
                    }
                }
            }
        }
        for &g in &self.generators {
            if g as usize >= n {
                return Err(TableDefect::GeneratorRange { g: g as usize });
            }
        }
        let reached = self.closure_members(&self.generators);
        if reached.len() != n {
            return Err(TableDefect::GeneratorsIncomplete { reached: reached.len(), order: n });
        }
        Ok(())
    }

    /// Sorted member list of the subgroup generated by `seed` (plus the
    /// identity). Worklist closure over the table.
    fn closure_members(&self, seed: &[Elem]) -> Vec<Elem> {
        let mut present = vec![false; self.order];
        present[0] = true;
        let mut members = vec![0 as Elem];
        let mut queue: VecDeque<Elem> = VecDeque::new();
        for &s in seed {
            if !present[s as usize] {
                present[s as usize] = true;
                members.push(s);
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            // Products with everything known so far, both sides.
            let mut i = 0;
            while i < members.len() {
                let m = members[i];
                for p in [self.mul(x, m), self.mul(m, x)] {
                    if !present[p as usize] {
                        present[p as usize] = true;
                        members.push(p);
                        queue.push_back(p);
                    }
                }
                i += 1;
            }
        }
        members.sort_unstable();
        members
    }

    /// Smallest subgroup containing `seed`; the seed is recorded as the
    /// generator witness.
    pub fn subgroup_closure(&self, seed: &[Elem]) -> Result<Subgroup> {
        for &s in seed {
            self.check_index(s as usize)?;
        }
        let members = self.closure_members(seed);
        Ok(Subgroup {
            parent_order: self.order,
            members,
            generators: seed.to_vec(),
        })
    }

    /// The trivial subgroup of this group.
    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            parent_order: self.order,
            members: vec![0],
            generators: Vec::new(),
        }
    }

    /// The whole group as a subgroup of itself.
    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            parent_order: self.order,
            members: (0..self.order as Elem).collect(),
            generators: self.generators.clone(),
        }
    }

    /// Builds a subgroup directly from a member set already known to be
    /// closed; the members double as the generator witness.
    pub(crate) fn subgroup_from_members(&self, mut members: Vec<Elem>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        debug_assert!(members.first() == Some(&0));
        Subgroup {
            parent_order: self.order,
            generators: members.clone(),
            members,
        }
    }

    /// Checks `g^-1 n g` membership for every generator/member pair.
    pub fn is_normal(&self, s: &Subgroup) -> std::result::Result<(), (Elem, Elem)> {
        assert_eq!(s.parent_order, self.order, "subgroup belongs to another group");
        for g in 0..self.order as Elem {
            for &n in &s.members {
                if !s.contains(self.conjugate(n, g)) {
                    return Err((g, n));
                }
            }
        }
        Ok(())
    }

    /// Quotient by a normal subgroup. Coset representatives are the minimal
    /// element index of each coset, so the construction is deterministic.
    pub fn quotient(&self, kernel: &Subgroup) -> Result<Quotient> {
        assert_eq!(kernel.parent_order, self.order, "subgroup belongs to another group");
        if let Err((g, n)) = self.is_normal(kernel) {
            return Err(Error::NotNormal { conjugator: g as usize, member: n as usize });
        }
        let n = self.order;
        let mut rep_of = vec![0 as Elem; n];
        for g in 0..n as Elem {
            let mut best = Elem::MAX;
            for &k in &kernel.members {
                let e = self.mul(g, k);
                if e < best {
                    best = e;
                }
            }
            rep_of[g as usize] = best;
        }
        let mut reps: Vec<Elem> = rep_of.clone();
        reps.sort_unstable();
        reps.dedup();
        let mut rank = vec![Elem::MAX; n];
        for (i, &r) in reps.iter().enumerate() {
            rank[r as usize] = i as Elem;
        }
        let q = reps.len();
        let mut mul = vec![0 as Elem; q * q];
        for i in 0..q {
            for j in 0..q {
                let prod = self.mul(reps[i], reps[j]);
                mul[i * q + j] = rank[rep_of[prod as usize] as usize];
            }
        }
        let projection: Vec<Elem> =
            (0..n).map(|g| rank[rep_of[g] as usize]).collect();
        let mut gens: Vec<Elem> = self
            .generators
            .iter()
            .map(|&g| projection[g as usize])
            .filter(|&g| g != 0)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        let table = GroupTable::from_mul_unchecked(q, mul, gens);
        Ok(Quotient {
            kernel: kernel.clone(),
            coset_reps: reps,
            table,
            projection: Morphism { map: projection },
        })
    }

    /// Direct product with pair `(a, b)` encoded as `a * |H| + b`.
    pub fn direct_product(&self, other: &GroupTable, cap: usize) -> Result<GroupTable> {
        let n = self
            .order
            .checked_mul(other.order)
            .filter(|&n| n <= cap && n <= Elem::MAX as usize)
            .ok_or(Error::OrderCapExceeded { cap })?;
        let (na, nb) = (self.order, other.order);
        let mut mul = vec![0 as Elem; n * n];
        for x in 0..na {
            for y in 0..nb {
                let row = x * nb + y;
                for u in 0..na {
                    for v in 0..nb {
                        let col = u * nb + v;
                        let p = self.mul(x as Elem, u as Elem) as usize * nb
                            + other.mul(y as Elem, v as Elem) as usize;
                        mul[row * n + col] = p as Elem;
                    }
                }
            }
        }
        let mut gens: Vec<Elem> = self
            .generators
            .iter()
            .map(|&g| (g as usize * nb) as Elem)
            .collect();
        gens.extend(other.generators.iter().map(|&h| h));
        Ok(GroupTable::from_mul_unchecked(n, mul, gens))
    }

    /// Re-indexes a subgroup as a standalone table. Returns the table and
    /// the embedding (new index -> parent index). Members are taken in
    /// sorted order, so the identity stays at 0.
    pub fn subgroup_table(&self, s: &Subgroup) -> (GroupTable, Vec<Elem>) {
        assert_eq!(s.parent_order, self.order, "subgroup belongs to another group");
        let m = s.members.len();
        let mut pos = vec![Elem::MAX; self.order];
        for (i, &e) in s.members.iter().enumerate() {
            pos[e as usize] = i as Elem;
        }
        let mut mul = vec![0 as Elem; m * m];
        for i in 0..m {
            for j in 0..m {
                let p = self.mul(s.members[i], s.members[j]);
                mul[i * m + j] = pos[p as usize];
            }
        }
        let mut gens: Vec<Elem> = s
            .generators
            .iter()
            .map(|&g| pos[g as usize])
            .filter(|&g| g != 0)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        (GroupTable::from_mul_unchecked(m, mul, gens), s.members.clone())
    }
}

fn derive_inverses(order: usize, mul: &[Elem]) -> Result<Vec<Elem>> {
    let mut inv = vec![Elem::MAX; order];
    for x in 0..order {
        let mut found = None;
        for y in 0..order {
            if mul[x * order + y] == 0 && mul[y * order + x] == 0 {
                found = Some(y as Elem);
                break;
            }
        }
        inv[x] = found.ok_or(TableDefect::InverseMissing { x })?;
    }
    Ok(inv)
}

/// A closed subset of a parent [`GroupTable`], with generator witnesses.
/// Stores the parent's order so accidental cross-group use is caught.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<Elem>,
    generators: Vec<Elem>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Members in ascending order; always starts with the identity.
    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    /// Index `[G : S]`.
    pub fn index(&self) -> usize {
        self.parent_order / self.members.len()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// Set intersection with another subgroup of the same parent.
    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.parent_order, other.parent_order);
        let members: Vec<Elem> = self
            .members
            .iter()
            .copied()
            .filter(|&e| other.contains(e))
            .collect();
        Subgroup {
            parent_order: self.parent_order,
            generators: members.clone(),
            members,
        }
    }

    /// True if every member of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&e| other.contains(e))
    }

    /// Validates closure, identity membership and the generator witness
    /// against the parent table.
    pub fn validate(&self, parent: &GroupTable) -> Result<()> {
        assert_eq!(self.parent_order, parent.order());
        if !self.contains(0) {
            return Err(Error::internal("subgroup", "missing identity"));
        }
        for &a in &self.members {
            if !self.contains(parent.inv(a)) {
                return Err(Error::internal("subgroup", format!("inverse of {a} missing")));
            }
            for &b in &self.members {
                if !self.contains(parent.mul(a, b)) {
                    return Err(Error::internal(
                        "subgroup",
                        format!("product of {a} and {b} escapes"),
                    ));
                }
            }
        }
        let closed = parent.closure_members(&self.generators);
        if closed != self.members {
            return Err(Error::internal("subgroup", "generators do not generate members"));
        }
        Ok(())
    }
}

/// A homomorphism given as an explicit image table on element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub map: Vec<Elem>,
}

impl Morphism {
    pub fn apply(&self, e: Elem) -> Elem {
        self.map[e as usize]
    }

    /// Checks `map(ab) = map(a)map(b)` for all pairs and `map(1) = 1`.
    pub fn verify(&self, domain: &GroupTable, codomain: &GroupTable) -> Result<()> {
        if self.map.len() != domain.order() {
            return Err(Error::internal("morphism", "map length differs from domain order"));
        }
        for &v in &self.map {
            if v as usize >= codomain.order() {
                return Err(Error::IndexOutOfRange {
                    index: v as usize,
                    order: codomain.order(),
                });
            }
        }
        if self.map[0] != 0 {
            return Err(Error::NotAMorphism { a: 0, b: 0 });
        }
        for a in 0..domain.order() as Elem {
            for b in 0..domain.order() as Elem {
                if self.apply(domain.mul(a, b)) != codomain.mul(self.apply(a), self.apply(b)) {
                    return Err(Error::NotAMorphism { a: a as usize, b: b as usize });
                }
            }
        }
        Ok(())
    }

    pub fn is_bijective(&self, codomain_order: usize) -> bool {
        if self.map.len() != codomain_order {
            return false;
        }
        let mut seen = vec![false; codomain_order];
        for &v in &self.map {
            if (v as usize) >= codomain_order || seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        true
    }
}

/// A quotient `G/N`: the kernel, one minimal representative per coset, the
/// quotient's own table and the projection morphism.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub kernel: Subgroup,
    pub coset_reps: Vec<Elem>,
    pub table: GroupTable,
    pub projection: Morphism,
}

impl Quotient {
    /// Minimal representative (in the parent) of the coset of `g`.
    pub fn rep_of(&self, g: Elem) -> Elem {
        self.coset_reps[self.projection.apply(g) as usize]
    }
}

/// Generates the group of permutations reachable from `gens` on `degree`
/// points, breadth-first, and tabulates it. Composition is left-to-right:
/// `(a * b)(p) = b(a(p))`. Fails once more than `cap` elements appear.
pub fn close_permutations(
    degree: usize,
    gens: &[Vec<usize>],
    cap: usize,
) -> Result<GroupTable> {
    for g in gens {
        if g.len() != degree {
            return Err(Error::NotAPermutation { degree });
        }
        let mut seen = vec![false; degree];
        for &image in g {
            if image >= degree || seen[image] {
                return Err(Error::NotAPermutation { degree });
            }
            seen[image] = true;
        }
    }
    let cap = cap.min(Elem::MAX as usize);
    let gens: Vec<Vec<u16>> = gens
        .iter()
        .map(|g| g.iter().map(|&i| i as u16).collect())
        .collect();
    let identity: Vec<u16> = (0..degree as u16).collect();
    let mut elems: Vec<Vec<u16>> = vec![identity.clone()];
    let mut index: HashMap<Vec<u16>, usize> = HashMap::new();
    index.insert(identity, 0);
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let base = elems[i].clone();
            let prod: Vec<u16> = base.iter().map(|&p| g[p as usize]).collect();
            if !index.contains_key(&prod) {
                if elems.len() >= cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                index.insert(prod.clone(), elems.len());
                elems.push(prod);
                queue.push_back(elems.len() - 1);
            }
        }
    }
    let n = elems.len();
    let mut mul = vec![0 as Elem; n * n];
    for a in 0..n {
        for b in 0..n {
            let prod: Vec<u16> = (0..degree).map(|p| elems[b][elems[a][p] as usize]).collect();
            mul[a * n + b] = index[&prod] as Elem;
        }
    }
    let mut gen_idx: Vec<Elem> = gens.iter().map(|g| index[g] as Elem).collect();
    gen_idx.dedup();
    Ok(GroupTable::from_mul_unchecked(n, mul, gen_idx))
}
