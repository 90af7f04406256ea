//! Isoclinism: the commutator pairing on the central quotient, exhaustive
//! pairwise isoclinism testing, the stem condition `Z(G) <= gamma_2(G)` and
//! stem reduction by central quotients.
//!
//! Two groups are isoclinic when there are isomorphisms `phi` of the
//! central quotients and `theta` of the derived subgroups that commute with
//! the commutator pairings. The search enumerates `phi` by generator-image
//! backtracking with invariant pruning; `theta` is never searched — the
//! diagram forces it on commutator values, so only well-definedness and
//! bijectivity are checked.

use std::collections::{BTreeSet, VecDeque};

use crate::group::{Elem, GroupTable, Morphism, Quotient, Subgroup};
use crate::invariants::{self, center, conjugacy_class};
use crate::{Error, Result};

const UNSET: Elem = Elem::MAX;

/// The commutator map `G/Z x G/Z -> gamma_2(G)`, `(xZ, yZ) -> [x, y]`,
/// tabulated on coset representatives. Well-definedness (independence of
/// the representatives) is verified exhaustively on construction.
#[derive(Debug, Clone)]
pub struct CommutatorPairing {
    pub quotient: Quotient,
    pub gamma2: Subgroup,
    /// `[rep_i, rep_j]` as parent element indices, row-major.
    values: Vec<Elem>,
    /// Parent element -> position in `gamma2.members()`, or `UNSET`.
    member_pos: Vec<Elem>,
}

impl CommutatorPairing {
    pub fn quotient_order(&self) -> usize {
        self.quotient.table.order()
    }

    /// `[rep_i, rep_j]` as a parent element.
    pub fn value(&self, i: Elem, j: Elem) -> Elem {
        self.values[i as usize * self.quotient_order() + j as usize]
    }

    /// `[rep_i, rep_j]` as a position into the derived subgroup's members.
    pub fn position(&self, i: Elem, j: Elem) -> Elem {
        self.member_pos[self.value(i, j) as usize]
    }
}

/// Builds the pairing for a group, verifying representative independence
/// over every central translate and that the image generates `gamma_2(G)`.
pub fn commutator_pairing(g: &GroupTable) -> Result<CommutatorPairing> {
    let z = center(g);
    let quotient = g.quotient(&z)?;
    let gamma2 = invariants::derived_subgroup(g);
    let q = quotient.table.order();
    let reps = &quotient.coset_reps;
    let mut values = vec![0 as Elem; q * q];
    for i in 0..q {
        for j in 0..q {
            values[i * q + j] = g.commutator(reps[i], reps[j]);
        }
    }
    // representative independence: [xz, yw] = [x, y] for central z, w
    for i in 0..q {
        for j in 0..q {
            let expect = values[i * q + j];
            for &zi in z.members() {
                let a = g.mul(reps[i], zi);
                for &wj in z.members() {
                    let b = g.mul(reps[j], wj);
                    if g.commutator(a, b) != expect {
                        return Err(Error::internal(
                            "commutator pairing well-definedness",
                            format!("cosets ({i}, {j}) disagree on translates"),
                        ));
                    }
                }
            }
        }
    }
    let mut member_pos = vec![UNSET; g.order()];
    for (p, &m) in gamma2.members().iter().enumerate() {
        member_pos[m as usize] = p as Elem;
    }
    let image: Vec<Elem> = {
        let mut v: Vec<Elem> = values.clone();
        v.sort_unstable();
        v.dedup();
        v
    };
    if g.subgroup_closure(&image)?.members() != gamma2.members() {
        return Err(Error::internal(
            "commutator pairing image",
            "pairing image does not generate the derived subgroup",
        ));
    }
    Ok(CommutatorPairing { quotient, gamma2, values, member_pos })
}

/// A verified isoclinism: `phi` maps the central quotient tables onto each
/// other, `theta` the derived subgroup tables (as positions into the sorted
/// member lists), and the two commute with the commutator pairings.
#[derive(Debug, Clone)]
pub struct IsoclinismWitness {
    pub phi: Morphism,
    pub theta: Morphism,
    pub verified: bool,
}

impl IsoclinismWitness {
    /// The witness for the reverse direction.
    pub fn invert(&self) -> IsoclinismWitness {
        let mut phi = vec![0 as Elem; self.phi.map.len()];
        for (x, &y) in self.phi.map.iter().enumerate() {
            phi[y as usize] = x as Elem;
        }
        let mut theta = vec![0 as Elem; self.theta.map.len()];
        for (x, &y) in self.theta.map.iter().enumerate() {
            theta[y as usize] = x as Elem;
        }
        IsoclinismWitness {
            phi: Morphism { map: phi },
            theta: Morphism { map: theta },
            verified: false,
        }
    }

    /// Composition `other . self` (apply `self` first).
    pub fn compose(&self, other: &IsoclinismWitness) -> IsoclinismWitness {
        IsoclinismWitness {
            phi: Morphism {
                map: self.phi.map.iter().map(|&y| other.phi.apply(y)).collect(),
            },
            theta: Morphism {
                map: self.theta.map.iter().map(|&y| other.theta.apply(y)).collect(),
            },
            verified: false,
        }
    }
}

/// Independent re-verification of a witness against the two groups: both
/// maps must be bijective homomorphisms and the full diagram must commute.
pub fn verify_isoclinism(
    g: &GroupTable,
    h: &GroupTable,
    witness: &IsoclinismWitness,
) -> Result<()> {
    let pg = commutator_pairing(g)?;
    let ph = commutator_pairing(h)?;
    let (g2g, _) = g.subgroup_table(&pg.gamma2);
    let (g2h, _) = h.subgroup_table(&ph.gamma2);
    witness.phi.verify(&pg.quotient.table, &ph.quotient.table)?;
    if !witness.phi.is_bijective(ph.quotient.table.order()) {
        return Err(Error::internal("isoclinism verification", "phi is not bijective"));
    }
    witness.theta.verify(&g2g, &g2h)?;
    if !witness.theta.is_bijective(g2h.order()) {
        return Err(Error::internal("isoclinism verification", "theta is not bijective"));
    }
    let q = pg.quotient_order() as Elem;
    for i in 0..q {
        for j in 0..q {
            let lhs = witness.theta.apply(pg.position(i, j));
            let rhs = ph.position(witness.phi.apply(i), witness.phi.apply(j));
            if lhs != rhs {
                return Err(Error::internal(
                    "isoclinism verification",
                    format!("diagram fails at coset pair ({i}, {j})"),
                ));
            }
        }
    }
    Ok(())
}

struct SearchContext {
    qg: GroupTable,
    qh: GroupTable,
    pair_g: Vec<Elem>,
    pair_h: Vec<Elem>,
    qg_order: Vec<usize>,
    qh_order: Vec<usize>,
    qg_class: Vec<usize>,
    qh_class: Vec<usize>,
    g2_order_g: Vec<usize>,
    g2_order_h: Vec<usize>,
}

impl SearchContext {
    fn pair_g(&self, a: Elem, b: Elem) -> Elem {
        self.pair_g[a as usize * self.qg.order() + b as usize]
    }

    fn pair_h(&self, a: Elem, b: Elem) -> Elem {
        self.pair_h[a as usize * self.qh.order() + b as usize]
    }
}

#[derive(Clone)]
struct SearchState {
    phi: Vec<Elem>,
    used: Vec<bool>,
    known: Vec<Elem>,
    theta: Vec<Elem>,
    theta_used: Vec<bool>,
}

impl SearchState {
    fn fresh(ctx: &SearchContext, gamma2_size: usize) -> SearchState {
        let mut st = SearchState {
            phi: vec![UNSET; ctx.qg.order()],
            used: vec![false; ctx.qh.order()],
            known: vec![0],
            theta: vec![UNSET; gamma2_size],
            theta_used: vec![false; gamma2_size],
        };
        st.phi[0] = 0;
        st.used[0] = true;
        st.theta[0] = 0;
        st.theta_used[0] = true;
        st
    }

    fn theta_assign(&mut self, ctx: &SearchContext, c: Elem, t: Elem) -> bool {
        if self.theta[c as usize] != UNSET {
            return self.theta[c as usize] == t;
        }
        if self.theta_used[t as usize]
            || ctx.g2_order_g[c as usize] != ctx.g2_order_h[t as usize]
        {
            return false;
        }
        self.theta[c as usize] = t;
        self.theta_used[t as usize] = true;
        true
    }

    fn try_assign(
        &mut self,
        ctx: &SearchContext,
        x: Elem,
        y: Elem,
        queue: &mut VecDeque<Elem>,
    ) -> bool {
        if self.phi[x as usize] != UNSET {
            return self.phi[x as usize] == y;
        }
        if self.used[y as usize]
            || ctx.qg_order[x as usize] != ctx.qh_order[y as usize]
            || ctx.qg_class[x as usize] != ctx.qh_class[y as usize]
        {
            return false;
        }
        self.phi[x as usize] = y;
        self.used[y as usize] = true;
        self.known.push(x);
        queue.push_back(x);
        true
    }

    /// Assigns `phi(x) = y` and propagates: products with everything known
    /// force further images, and every processed pair must respect the
    /// commutator pairings through the partially built `theta`.
    fn extend(&mut self, ctx: &SearchContext, x: Elem, y: Elem) -> bool {
        let mut queue = VecDeque::new();
        if !self.try_assign(ctx, x, y, &mut queue) {
            return false;
        }
        while let Some(a) = queue.pop_front() {
            let mut idx = 0;
            while idx < self.known.len() {
                let k = self.known[idx];
                idx += 1;
                let (fa, fk) = (self.phi[a as usize], self.phi[k as usize]);
                for ((u, v), (fu, fv)) in [((a, k), (fa, fk)), ((k, a), (fk, fa))] {
                    let prod = ctx.qg.mul(u, v);
                    let image = ctx.qh.mul(fu, fv);
                    if !self.try_assign(ctx, prod, image, &mut queue) {
                        return false;
                    }
                    let c = ctx.pair_g(u, v);
                    let t = ctx.pair_h(fu, fv);
                    if !self.theta_assign(ctx, c, t) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Decides isoclinism of two groups. Returns a verified witness, or `None`
/// after exhausting the search (a definitive "not isoclinic"). Groups whose
/// central quotient exceeds `search_cap` are rejected as infeasible rather
/// than answered.
pub fn are_isoclinic(
    g: &GroupTable,
    h: &GroupTable,
    search_cap: usize,
) -> Result<Option<IsoclinismWitness>> {
    let pg = commutator_pairing(g)?;
    let ph = commutator_pairing(h)?;
    if pg.quotient_order() > search_cap || ph.quotient_order() > search_cap {
        return Err(Error::Infeasible {
            what: format!(
                "central quotients of order {} and {}",
                pg.quotient_order(),
                ph.quotient_order()
            ),
            cap: search_cap,
        });
    }
    if pg.quotient_order() != ph.quotient_order()
        || pg.gamma2.order() != ph.gamma2.order()
    {
        return Ok(None);
    }

    let qg = pg.quotient.table.clone();
    let qh = ph.quotient.table.clone();
    let qg_order: Vec<usize> = (0..qg.order() as Elem).map(|x| qg.element_order(x)).collect();
    let qh_order: Vec<usize> = (0..qh.order() as Elem).map(|x| qh.element_order(x)).collect();
    let mut og = qg_order.clone();
    let mut oh = qh_order.clone();
    og.sort_unstable();
    oh.sort_unstable();
    if og != oh {
        return Ok(None);
    }
    let qg_class: Vec<usize> =
        (0..qg.order() as Elem).map(|x| conjugacy_class(&qg, x).len()).collect();
    let qh_class: Vec<usize> =
        (0..qh.order() as Elem).map(|x| conjugacy_class(&qh, x).len()).collect();
    let mut cg = qg_class.clone();
    let mut ch = qh_class.clone();
    cg.sort_unstable();
    ch.sort_unstable();
    if cg != ch {
        return Ok(None);
    }
    // pairing image-size profile per coset
    let profile = |p: &CommutatorPairing| -> Vec<usize> {
        let q = p.quotient_order() as Elem;
        let mut sizes: Vec<usize> = (0..q)
            .map(|i| {
                let mut row: Vec<Elem> = (0..q).map(|j| p.value(i, j)).collect();
                row.sort_unstable();
                row.dedup();
                row.len()
            })
            .collect();
        sizes.sort_unstable();
        sizes
    };
    if profile(&pg) != profile(&ph) {
        return Ok(None);
    }

    let (g2g, _) = g.subgroup_table(&pg.gamma2);
    let (g2h, _) = h.subgroup_table(&ph.gamma2);
    let pair_pos = |p: &CommutatorPairing| -> Vec<Elem> {
        let q = p.quotient_order() as Elem;
        let mut out = Vec::with_capacity(p.quotient_order() * p.quotient_order());
        for i in 0..q {
            for j in 0..q {
                out.push(p.position(i, j));
            }
        }
        out
    };
    let ctx = SearchContext {
        pair_g: pair_pos(&pg),
        pair_h: pair_pos(&ph),
        g2_order_g: (0..g2g.order() as Elem).map(|x| g2g.element_order(x)).collect(),
        g2_order_h: (0..g2h.order() as Elem).map(|x| g2h.element_order(x)).collect(),
        qg,
        qh,
        qg_order,
        qh_order,
        qg_class,
        qh_class,
    };

    let gens = greedy_generators(&ctx.qg);
    let state = SearchState::fresh(&ctx, g2g.order());
    let found = search_phi(&ctx, &g2g, &g2h, state, &gens, 0);
    match found {
        Some(witness) => {
            verify_isoclinism(g, h, &witness)?;
            Ok(Some(IsoclinismWitness { verified: true, ..witness }))
        }
        None => Ok(None),
    }
}

/// Greedy generating sequence: each pick enlarges the generated subgroup
/// the most (smallest index on ties).
fn greedy_generators(table: &GroupTable) -> Vec<Elem> {
    let mut chosen: Vec<Elem> = Vec::new();
    let mut current = table.subgroup_closure(&chosen).expect("empty seed");
    while current.order() < table.order() {
        let mut best: Option<(usize, Elem)> = None;
        for x in 0..table.order() as Elem {
            if current.contains(x) {
                continue;
            }
            let mut seed = chosen.clone();
            seed.push(x);
            let size = table.subgroup_closure(&seed).expect("valid index").order();
            if best.map_or(true, |(s, _)| size > s) {
                best = Some((size, x));
                if size == table.order() {
                    break;
                }
            }
        }
        let (_, pick) = best.expect("a proper subgroup has elements outside it");
        chosen.push(pick);
        current = table.subgroup_closure(&chosen).expect("valid index");
    }
    chosen
}

fn search_phi(
    ctx: &SearchContext,
    g2g: &GroupTable,
    g2h: &GroupTable,
    state: SearchState,
    gens: &[Elem],
    depth: usize,
) -> Option<IsoclinismWitness> {
    if depth == gens.len() {
        return finalize(ctx, g2g, g2h, state);
    }
    let x = gens[depth];
    debug_assert_eq!(state.phi[x as usize], UNSET, "greedy generators are independent");
    for y in 0..ctx.qh.order() as Elem {
        let mut next = state.clone();
        if next.extend(ctx, x, y) {
            if let Some(found) = search_phi(ctx, g2g, g2h, next, gens, depth + 1) {
                return Some(found);
            }
        }
    }
    None
}

/// Full checks once every generator image is fixed: `phi` must be a total
/// bijective homomorphism, `theta` (forced on commutator values) must
/// extend multiplicatively to all of the derived subgroup, and the diagram
/// must commute everywhere.
fn finalize(
    ctx: &SearchContext,
    g2g: &GroupTable,
    g2h: &GroupTable,
    mut state: SearchState,
) -> Option<IsoclinismWitness> {
    if state.known.len() != ctx.qg.order() {
        return None;
    }
    let q = ctx.qg.order() as Elem;
    for a in 0..q {
        for b in 0..q {
            let (fa, fb) = (state.phi[a as usize], state.phi[b as usize]);
            if state.phi[ctx.qg.mul(a, b) as usize] != ctx.qh.mul(fa, fb) {
                return None;
            }
            if state.theta[ctx.pair_g(a, b) as usize] != ctx.pair_h(fa, fb) {
                return None;
            }
        }
    }
    // multiplicative extension of theta over the derived subgroup
    let mut assigned: Vec<Elem> = (0..g2g.order() as Elem)
        .filter(|&c| state.theta[c as usize] != UNSET)
        .collect();
    let mut head = 0;
    while head < assigned.len() {
        let u = assigned[head];
        head += 1;
        let mut idx = 0;
        while idx < assigned.len() {
            let v = assigned[idx];
            idx += 1;
            for (a, b) in [(u, v), (v, u)] {
                let w = g2g.mul(a, b);
                let t = g2h.mul(state.theta[a as usize], state.theta[b as usize]);
                if state.theta[w as usize] != UNSET {
                    if state.theta[w as usize] != t {
                        return None;
                    }
                } else {
                    if state.theta_used[t as usize] {
                        return None;
                    }
                    state.theta[w as usize] = t;
                    state.theta_used[t as usize] = true;
                    assigned.push(w);
                }
            }
        }
    }
    if state.theta.iter().any(|&t| t == UNSET) {
        // commutators generate the derived subgroup, so this cannot happen
        return None;
    }
    for ua in 0..g2g.order() as Elem {
        for ub in 0..g2g.order() as Elem {
            let lhs = state.theta[g2g.mul(ua, ub) as usize];
            let rhs =
                g2h.mul(state.theta[ua as usize], state.theta[ub as usize]);
            if lhs != rhs {
                return None;
            }
        }
    }
    Some(IsoclinismWitness {
        phi: Morphism { map: state.phi },
        theta: Morphism { map: state.theta },
        verified: false,
    })
}

/// `Z(G) <= gamma_2(G)`: whether the group is a stem group of its
/// isoclinism class.
pub fn is_stem(g: &GroupTable) -> bool {
    let z = center(g);
    let gamma2 = invariants::derived_subgroup(g);
    z.is_subset_of(&gamma2)
}

/// Result of [`stem_reduce`]: the quotient of the input by the accumulated
/// kernel, a verified isoclinism witness between input and result, and
/// whether the result satisfies the stem condition.
#[derive(Debug, Clone)]
pub struct StemReduction {
    pub quotient: Quotient,
    pub witness: IsoclinismWitness,
    pub reached_stem: bool,
}

/// Repeatedly quotients by a largest central subgroup meeting the derived
/// subgroup trivially (deterministic tie-break: lexicographically smallest
/// member set) until the stem condition holds or no such subgroup remains.
/// Quotienting by such a subgroup preserves the isoclinism class, so the
/// final witness is re-derived by [`are_isoclinic`] and must exist.
pub fn stem_reduce(g: &GroupTable, search_cap: usize) -> Result<StemReduction> {
    let mut kernel_members: Vec<Elem> = vec![0];
    let reached_stem = loop {
        let kernel = g.subgroup_closure(&kernel_members)?;
        let q = g.quotient(&kernel)?;
        let cur = &q.table;
        if is_stem(cur) {
            break true;
        }
        let z = center(cur);
        let gamma2 = invariants::derived_subgroup(cur);
        let candidates = central_complements(cur, &z, &gamma2, search_cap)?;
        match candidates.first() {
            Some(a) if a.len() > 1 => {
                // lift A through the projection into the original group
                kernel_members = (0..g.order() as Elem)
                    .filter(|&x| {
                        a.binary_search(&q.projection.apply(x)).is_ok()
                    })
                    .collect();
            }
            _ => break false,
        }
    };
    let kernel = g.subgroup_closure(&kernel_members)?;
    let quotient = g.quotient(&kernel)?;
    let witness = are_isoclinic(g, &quotient.table, search_cap)?.ok_or_else(|| {
        Error::internal(
            "stem reduction",
            "central quotient by a complement of the derived subgroup must stay isoclinic",
        )
    })?;
    Ok(StemReduction { quotient, witness, reached_stem })
}

/// All subgroups `A <= Z` with `A` meeting `gamma2` trivially, as sorted
/// member sets ordered largest-first (members lexicographically on ties).
fn central_complements(
    g: &GroupTable,
    z: &Subgroup,
    gamma2: &Subgroup,
    cap: usize,
) -> Result<Vec<Vec<Elem>>> {
    if z.order() > cap.max(128) {
        return Err(Error::Infeasible {
            what: format!("enumerating subgroups of a center of order {}", z.order()),
            cap: cap.max(128),
        });
    }
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    seen.insert(vec![0]);
    let mut queue: VecDeque<Vec<Elem>> = VecDeque::new();
    queue.push_back(vec![0]);
    while let Some(s) = queue.pop_front() {
        for &x in z.members() {
            if s.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = s.clone();
            seed.push(x);
            let grown = g.subgroup_closure(&seed)?.members().to_vec();
            if seen.insert(grown.clone()) {
                queue.push_back(grown);
            }
        }
    }
    let mut out: Vec<Vec<Elem>> = seen
        .into_iter()
        .filter(|s| s.iter().filter(|&&e| gamma2.contains(e)).count() == 1)
        .collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, parse_descriptor};
    use crate::DEFAULT_SEARCH_CAP;

    fn table(desc: &str) -> GroupTable {
        build(&parse_descriptor(desc).unwrap()).unwrap()
    }

    #[test]
    fn pairing_of_abelian_group_is_one_by_one() {
        let p = commutator_pairing(&table("C6")).unwrap();
        assert_eq!(p.quotient_order(), 1);
        assert_eq!(p.value(0, 0), 0);
        assert!(p.gamma2.is_trivial());
    }

    #[test]
    fn pairing_of_d8_hits_the_half_turn_exactly_off_diagonal() {
        let p = commutator_pairing(&table("D8")).unwrap();
        assert_eq!(p.quotient_order(), 4);
        let mut nontrivial = 0;
        for i in 0..4 {
            for j in 0..4 {
                let v = p.value(i, j);
                assert!(v == 0 || v == 2);
                if v != 0 {
                    nontrivial += 1;
                    assert_ne!(i, j);
                    assert_ne!(i, 0);
                    assert_ne!(j, 0);
                }
            }
        }
        assert_eq!(nontrivial, 6);
    }

    #[test]
    fn pairing_of_q8_has_the_same_pattern() {
        let pd = commutator_pairing(&table("D8")).unwrap();
        let pq = commutator_pairing(&table("Q8")).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(pd.value(i, j) == 0, pq.value(i, j) == 0);
            }
        }
    }

    #[test]
    fn every_group_is_isoclinic_to_itself() {
        for desc in ["C4", "D8", "S3", "S4"] {
            let g = table(desc);
            let w = are_isoclinic(&g, &g, DEFAULT_SEARCH_CAP).unwrap().unwrap();
            assert!(w.verified, "{desc}");
        }
    }

    #[test]
    fn all_abelian_groups_are_isoclinic() {
        let c4 = table("C4");
        let c2 = table("C2");
        let w = are_isoclinic(&c4, &c2, DEFAULT_SEARCH_CAP).unwrap().unwrap();
        assert_eq!(w.phi.map, vec![0]);
        assert_eq!(w.theta.map, vec![0]);
    }

    #[test]
    fn d8_and_q8_are_isoclinic() {
        let d8 = table("D8");
        let q8 = table("Q8");
        let w = are_isoclinic(&d8, &q8, DEFAULT_SEARCH_CAP).unwrap().unwrap();
        verify_isoclinism(&d8, &q8, &w).unwrap();
    }

    #[test]
    fn d8_is_not_isoclinic_to_c8_or_s3() {
        let d8 = table("D8");
        assert!(are_isoclinic(&d8, &table("C8"), DEFAULT_SEARCH_CAP).unwrap().is_none());
        assert!(are_isoclinic(&d8, &table("S3"), DEFAULT_SEARCH_CAP).unwrap().is_none());
    }

    #[test]
    fn search_cap_breach_is_not_a_verdict() {
        let err = are_isoclinic(&table("S4"), &table("S4"), 8).unwrap_err();
        assert!(matches!(err, Error::Infeasible { .. }));
    }

    #[test]
    fn witnesses_invert_and_compose() {
        let d8 = table("D8");
        let q8 = table("Q8");
        let w = are_isoclinic(&d8, &q8, DEFAULT_SEARCH_CAP).unwrap().unwrap();
        verify_isoclinism(&q8, &d8, &w.invert()).unwrap();
        verify_isoclinism(&d8, &d8, &w.compose(&w.invert())).unwrap();
    }

    #[test]
    fn stem_condition_on_small_groups() {
        assert!(is_stem(&table("C1")));
        assert!(is_stem(&table("D8")));
        assert!(is_stem(&table("Q8")));
        assert!(!is_stem(&table("C2 x D8")));
        assert!(!is_stem(&table("C6")));
    }

    #[test]
    fn stem_reduce_is_identity_on_stem_groups() {
        let d8 = table("D8");
        let r = stem_reduce(&d8, DEFAULT_SEARCH_CAP).unwrap();
        assert!(r.reached_stem);
        assert_eq!(r.quotient.table.order(), 8);
        assert!(r.quotient.kernel.is_trivial());
    }

    #[test]
    fn stem_reduce_strips_the_extra_factor_of_c2_x_d8() {
        let g = table("C2 x D8");
        let r = stem_reduce(&g, DEFAULT_SEARCH_CAP).unwrap();
        assert!(r.reached_stem);
        assert_eq!(r.quotient.table.order(), 8);
        assert!(is_stem(&r.quotient.table));
        let d8 = table("D8");
        assert!(are_isoclinic(&r.quotient.table, &d8, DEFAULT_SEARCH_CAP)
            .unwrap()
            .is_some());
    }

    #[test]
    fn stem_reduce_collapses_abelian_groups_to_the_point() {
        let r = stem_reduce(&table("C6"), DEFAULT_SEARCH_CAP).unwrap();
        assert!(r.reached_stem);
        assert_eq!(r.quotient.table.order(), 1);
    }

    #[test]
    fn direct_abelian_factors_do_not_change_the_isoclinism_class() {
        let d8 = table("D8");
        for extra in ["C2", "C3"] {
            let bigger = table(&format!("D8 x {extra}"));
            let w = are_isoclinic(&d8, &bigger, DEFAULT_SEARCH_CAP).unwrap().unwrap();
            verify_isoclinism(&d8, &bigger, &w).unwrap();
        }
    }

    #[test]
    fn both_extraspecial_types_are_isoclinic() {
        let plus = table("ES(3,1,+)");
        let minus = table("ES(3,1,-)");
        let w = are_isoclinic(&plus, &minus, DEFAULT_SEARCH_CAP).unwrap().unwrap();
        verify_isoclinism(&plus, &minus, &w).unwrap();
    }
}
