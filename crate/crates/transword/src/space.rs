//! Base alphabets and their lattices of closed subsets.
//!
//! Two instances are provided: a finite poset under its Alexandrov
//! (downward-closure) topology, and ℕ with the cofinite topology. Both are
//! Noetherian, which is what makes the symbolic product representation in
//! [`crate::algebra`] complete. Closed sets are downward-closed point sets
//! in the poset case, and either finite sets or the whole space in the
//! cofinite case.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::Error;
use crate::ordinal::Ordinal;

/// A point of a base space: an element index for finite posets, the
/// natural number itself for the cofinite alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub u64);

#[derive(Debug, PartialEq, Eq)]
enum SpaceKind {
    FinitePoset {
        names: Vec<String>,
        /// Reflexive-transitive order matrix: `leq[i][j]` iff element i
        /// lies below element j.
        leq: Vec<Vec<bool>>,
    },
    CofiniteNat,
}

/// A base alphabet. Spaces are immutable and shared via `Arc`; every
/// closed set and every symbolic object keeps a handle to its space.
#[derive(Debug, PartialEq, Eq)]
pub struct Space {
    kind: SpaceKind,
}

impl Space {
    /// A finite poset from element names and a list of `below ≤ above`
    /// pairs. The relation is closed reflexively and transitively;
    /// distinct elements on a common cycle are rejected.
    pub fn finite_poset(
        elements: &[&str],
        order: &[(&str, &str)],
    ) -> Result<Arc<Space>, Error> {
        let names: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateElement(n.clone()));
            }
        }
        let index = |name: &str| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownPoint(name.to_string()))
        };
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (lo, hi) in order {
            leq[index(lo)?][index(hi)?] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::OrderCycle(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(Arc::new(Space {
            kind: SpaceKind::FinitePoset { names, leq },
        }))
    }

    /// A finite antichain: no two distinct elements comparable.
    pub fn discrete(elements: &[&str]) -> Arc<Space> {
        Space::finite_poset(elements, &[]).expect("antichain definitions cannot fail")
    }

    /// A finite chain, listed from bottom to top.
    pub fn chain(elements: &[&str]) -> Arc<Space> {
        let order: Vec<(&str, &str)> = elements.windows(2).map(|p| (p[0], p[1])).collect();
        Space::finite_poset(elements, &order).expect("chain definitions cannot fail")
    }

    /// ℕ with the cofinite topology. Every point is a natural number;
    /// specialization is equality.
    pub fn cofinite_nat() -> Arc<Space> {
        Arc::new(Space {
            kind: SpaceKind::CofiniteNat,
        })
    }

    /// All points, in canonical order, when the alphabet is finite.
    pub fn finite_points(&self) -> Option<Vec<Point>> {
        match &self.kind {
            SpaceKind::FinitePoset { names, .. } => {
                Some((0..names.len() as u64).map(Point).collect())
            }
            SpaceKind::CofiniteNat => None,
        }
    }

    /// Resolves a point name: an element name for posets, a decimal
    /// numeral for the cofinite alphabet.
    pub fn point_named(&self, name: &str) -> Result<Point, Error> {
        match &self.kind {
            SpaceKind::FinitePoset { names, .. } => names
                .iter()
                .position(|n| n == name)
                .map(|i| Point(i as u64))
                .ok_or_else(|| Error::UnknownPoint(name.to_string())),
            SpaceKind::CofiniteNat => name
                .parse::<u64>()
                .map(Point)
                .map_err(|_| Error::UnknownPoint(name.to_string())),
        }
    }

    pub fn point_name(&self, p: Point) -> String {
        match &self.kind {
            SpaceKind::FinitePoset { names, .. } => names[p.0 as usize].clone(),
            SpaceKind::CofiniteNat => p.0.to_string(),
        }
    }

    /// Specialization order on points: the declared poset order, or
    /// equality on the cofinite alphabet (closures of points are
    /// singletons there).
    pub fn point_leq(&self, a: Point, b: Point) -> bool {
        match &self.kind {
            SpaceKind::FinitePoset { leq, .. } => leq[a.0 as usize][b.0 as usize],
            SpaceKind::CofiniteNat => a == b,
        }
    }

    fn check_point(&self, p: Point) -> Result<(), Error> {
        match &self.kind {
            SpaceKind::FinitePoset { names, .. } if p.0 as usize >= names.len() => {
                Err(Error::UnknownPoint(format!("#{}", p.0)))
            }
            _ => Ok(()),
        }
    }

    /// The closure of a finite point set: the downward closure in a
    /// poset, the set itself in the cofinite alphabet.
    pub fn closure_of_points(self: &Arc<Self>, points: &[Point]) -> Result<ClosedSet, Error> {
        for &p in points {
            self.check_point(p)?;
        }
        let members = match &self.kind {
            SpaceKind::FinitePoset { leq, .. } => {
                let mut set = BTreeSet::new();
                for &p in points {
                    for below in 0..leq.len() as u64 {
                        if leq[below as usize][p.0 as usize] {
                            set.insert(below);
                        }
                    }
                }
                set
            }
            SpaceKind::CofiniteNat => points.iter().map(|p| p.0).collect(),
        };
        Ok(ClosedSet {
            space: Arc::clone(self),
            repr: Repr::Finite(members),
        })
    }

    pub fn empty_set(self: &Arc<Self>) -> ClosedSet {
        ClosedSet {
            space: Arc::clone(self),
            repr: Repr::Finite(BTreeSet::new()),
        }
    }

    /// The whole space as a closed set.
    pub fn whole_set(self: &Arc<Self>) -> ClosedSet {
        let repr = match &self.kind {
            SpaceKind::FinitePoset { names, .. } => {
                Repr::Finite((0..names.len() as u64).collect())
            }
            SpaceKind::CofiniteNat => Repr::All,
        };
        ClosedSet {
            space: Arc::clone(self),
            repr,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Repr {
    Finite(BTreeSet<u64>),
    All,
}

/// A closed subset of a base space.
#[derive(Clone, Debug)]
pub struct ClosedSet {
    space: Arc<Space>,
    repr: Repr,
}

impl PartialEq for ClosedSet {
    fn eq(&self, other: &Self) -> bool {
        self.same_space(other) && self.repr == other.repr
    }
}

impl Eq for ClosedSet {}

/// Ordering is defined within a single space only; it is the canonical
/// order used when printing and sorting unions (finite sets by element
/// list, the whole cofinite space last).
impl PartialOrd for ClosedSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClosedSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert!(self.same_space(other));
        self.repr.cmp(&other.repr)
    }
}

impl ClosedSet {
    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn same_space(&self, other: &ClosedSet) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space == other.space
    }

    pub fn is_empty(&self) -> bool {
        matches!(&self.repr, Repr::Finite(s) if s.is_empty())
    }

    /// True for the distinguished whole-space value of the cofinite
    /// alphabet. Finite posets always use explicit point sets.
    pub fn is_all(&self) -> bool {
        matches!(self.repr, Repr::All)
    }

    pub fn member(&self, p: Point) -> bool {
        match &self.repr {
            Repr::Finite(s) => s.contains(&p.0),
            Repr::All => true,
        }
    }

    /// The points of the set, `None` for the whole cofinite space.
    pub fn points(&self) -> Option<Vec<Point>> {
        match &self.repr {
            Repr::Finite(s) => Some(s.iter().copied().map(Point).collect()),
            Repr::All => None,
        }
    }

    pub fn subset(&self, other: &ClosedSet) -> Result<bool, Error> {
        if !self.same_space(other) {
            return Err(Error::SpaceMismatch);
        }
        Ok(match (&self.repr, &other.repr) {
            (Repr::Finite(a), Repr::Finite(b)) => a.is_subset(b),
            (Repr::Finite(_), Repr::All) => true,
            (Repr::All, Repr::Finite(_)) => false,
            (Repr::All, Repr::All) => true,
        })
    }

    pub fn intersect(&self, other: &ClosedSet) -> Result<ClosedSet, Error> {
        if !self.same_space(other) {
            return Err(Error::SpaceMismatch);
        }
        let repr = match (&self.repr, &other.repr) {
            (Repr::Finite(a), Repr::Finite(b)) => Repr::Finite(a.intersection(b).copied().collect()),
            (Repr::Finite(a), Repr::All) => Repr::Finite(a.clone()),
            (Repr::All, Repr::Finite(b)) => Repr::Finite(b.clone()),
            (Repr::All, Repr::All) => Repr::All,
        };
        Ok(ClosedSet {
            space: Arc::clone(&self.space),
            repr,
        })
    }

    /// The maximal points of the set under specialization. For the whole
    /// cofinite space there is no finite generating set; `None`.
    pub fn maximal_points(&self) -> Option<Vec<Point>> {
        let pts = self.points()?;
        match &self.space.kind {
            SpaceKind::FinitePoset { leq, .. } => Some(
                pts.iter()
                    .copied()
                    .filter(|&x| {
                        !pts.iter()
                            .any(|&y| y != x && leq[x.0 as usize][y.0 as usize])
                    })
                    .collect(),
            ),
            SpaceKind::CofiniteNat => Some(pts),
        }
    }

    /// Decomposition into maximal irreducible closed subsets: principal
    /// ideals of maximal points in a poset; singletons of a finite
    /// cofinite set; the whole space for itself. Empty for the empty set.
    pub fn irreducible_components(&self) -> Vec<ClosedSet> {
        match &self.repr {
            Repr::All => vec![self.clone()],
            Repr::Finite(_) => self
                .maximal_points()
                .expect("finite sets have maximal points")
                .into_iter()
                .map(|p| {
                    self.space
                        .closure_of_points(&[p])
                        .expect("members are valid points")
                })
                .collect(),
        }
    }

    /// Irreducible means non-empty and not a union of two strictly
    /// smaller closed sets; equivalently, exactly one component.
    pub fn is_irreducible(&self) -> bool {
        match &self.repr {
            Repr::All => true,
            Repr::Finite(_) => {
                matches!(self.maximal_points().as_deref(), Some([_]))
            }
        }
    }

    /// Rank of the set in the lattice of closed subsets ordered by
    /// inclusion: the cardinality for finite sets (downset chains grow one
    /// point at a time), ω for the whole cofinite space.
    pub fn stature(&self) -> Ordinal {
        match &self.repr {
            Repr::Finite(s) => Ordinal::finite(s.len() as u64),
            Repr::All => Ordinal::omega(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(space: &Arc<Space>, name: &str) -> Point {
        space.point_named(name).unwrap()
    }

    fn close(space: &Arc<Space>, names: &[&str]) -> ClosedSet {
        let pts: Vec<Point> = names.iter().map(|n| pt(space, n)).collect();
        space.closure_of_points(&pts).unwrap()
    }

    /// All downward-closed subsets of a poset, by filtering the power
    /// set. Small posets only; this is the reference model for the
    /// component and rank computations.
    fn all_downsets(space: &Arc<Space>) -> Vec<ClosedSet> {
        let pts = space.finite_points().unwrap();
        let n = pts.len();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let chosen: Vec<Point> = pts
                .iter()
                .copied()
                .filter(|p| mask & (1 << p.0) != 0)
                .collect();
            let down = chosen
                .iter()
                .all(|&x| pts.iter().all(|&y| !space.point_leq(y, x) || chosen.contains(&y)));
            if down {
                out.push(space.closure_of_points(&chosen).unwrap());
            }
        }
        out
    }

    fn sample_posets() -> Vec<Arc<Space>> {
        vec![
            Space::discrete(&["a"]),
            Space::discrete(&["a", "b", "c"]),
            Space::chain(&["a", "b", "c"]),
            // two minimal points under a common top
            Space::finite_poset(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap(),
            // one bottom under two maximal points
            Space::finite_poset(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap(),
            // diamond
            Space::finite_poset(
                &["a", "b", "c", "d"],
                &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
            )
            .unwrap(),
        ]
    }

    #[test]
    fn poset_construction_validates() {
        assert!(matches!(
            Space::finite_poset(&["a", "a"], &[]),
            Err(Error::DuplicateElement(_))
        ));
        assert!(matches!(
            Space::finite_poset(&["a", "b"], &[("a", "z")]),
            Err(Error::UnknownPoint(_))
        ));
        assert!(matches!(
            Space::finite_poset(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]),
            Err(Error::OrderCycle(_, _))
        ));
        // Transitivity is closed automatically.
        let chain = Space::finite_poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(chain.point_leq(pt(&chain, "a"), pt(&chain, "c")));
    }

    #[test]
    fn closure_and_membership() {
        let vee = Space::finite_poset(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
        let down_c = close(&vee, &["c"]);
        assert!(down_c.member(pt(&vee, "a")));
        assert!(down_c.member(pt(&vee, "b")));
        assert_eq!(down_c, vee.whole_set());
        assert!(close(&vee, &["a"]).subset(&down_c).unwrap());
        assert!(!down_c.subset(&close(&vee, &["a", "b"])).unwrap());

        let nat = Space::cofinite_nat();
        let f = nat.closure_of_points(&[Point(3), Point(5)]).unwrap();
        assert!(f.member(Point(3)) && !f.member(Point(4)));
        assert!(f.subset(&nat.whole_set()).unwrap());
        assert!(!nat.whole_set().subset(&f).unwrap());
        assert_eq!(
            f.intersect(&nat.whole_set()).unwrap(),
            f
        );
    }

    #[test]
    fn space_mismatch_is_an_error() {
        let a = Space::discrete(&["a", "b"]);
        let b = Space::chain(&["a", "b"]);
        let (fa, fb) = (a.whole_set(), b.whole_set());
        assert_eq!(fa.subset(&fb), Err(Error::SpaceMismatch));
        assert_eq!(fa.intersect(&fb), Err(Error::SpaceMismatch));
        // Structurally equal spaces interoperate even across allocations.
        let a2 = Space::discrete(&["a", "b"]);
        assert!(a.whole_set().subset(&a2.whole_set()).unwrap());
    }

    /// Irreducibility by definition: non-empty and not covered by two
    /// strictly smaller closed sets.
    fn brute_irreducible(f: &ClosedSet, lattice: &[ClosedSet]) -> bool {
        if f.is_empty() {
            return false;
        }
        for g in lattice {
            for h in lattice {
                let strictly_below = |x: &ClosedSet| x.subset(f).unwrap() && x != f;
                if strictly_below(g) && strictly_below(h) {
                    let covered = f
                        .points()
                        .unwrap()
                        .iter()
                        .all(|&p| g.member(p) || h.member(p));
                    if covered {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Rank in the downset lattice as a longest-chain length, computed by
    /// memoized search over the whole (small) lattice.
    fn brute_rank(f: &ClosedSet, lattice: &[ClosedSet]) -> u64 {
        lattice
            .iter()
            .filter(|g| g.subset(f).unwrap() && *g != f)
            .map(|g| brute_rank(g, lattice) + 1)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn components_match_brute_force_on_small_posets() {
        for space in sample_posets() {
            let lattice = all_downsets(&space);
            for f in &lattice {
                let comps = f.irreducible_components();
                assert_eq!(f.is_irreducible(), brute_irreducible(f, &lattice));
                assert_eq!(comps.len() == 1 && comps[0] == *f, f.is_irreducible());
                // Components are irreducible, cover f, and form an antichain.
                for c in &comps {
                    assert!(brute_irreducible(c, &lattice));
                    assert!(c.subset(f).unwrap());
                }
                if let Some(pts) = f.points() {
                    for p in pts {
                        assert!(comps.iter().any(|c| c.member(p)));
                    }
                }
                for (i, c) in comps.iter().enumerate() {
                    for (j, d) in comps.iter().enumerate() {
                        if i != j {
                            assert!(!c.subset(d).unwrap());
                        }
                    }
                }
                // Every irreducible closed subset lies inside a component.
                for g in &lattice {
                    if brute_irreducible(g, &lattice) && g.subset(f).unwrap() {
                        assert!(comps.iter().any(|c| g.subset(c).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn stature_matches_longest_chain_on_small_posets() {
        for space in sample_posets() {
            let lattice = all_downsets(&space);
            for f in &lattice {
                assert_eq!(
                    f.stature(),
                    Ordinal::finite(brute_rank(f, &lattice)),
                    "stature in {space:?}"
                );
            }
        }
    }

    #[test]
    fn cofinite_components_and_stature() {
        let nat = Space::cofinite_nat();
        let empty = nat.empty_set();
        assert!(empty.irreducible_components().is_empty());
        assert!(!empty.is_irreducible());

        let f = nat.closure_of_points(&[Point(1), Point(4), Point(9)]).unwrap();
        let comps = f.irreducible_components();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(ClosedSet::is_irreducible));
        assert!(!f.is_irreducible());
        assert_eq!(f.stature(), Ordinal::finite(3));

        let all = nat.whole_set();
        assert!(all.is_irreducible());
        assert_eq!(all.irreducible_components(), vec![all.clone()]);
        // The whole space sits above every finite stage: its rank is the
        // first infinite ordinal.
        assert_eq!(all.stature(), Ordinal::omega());
        let mut prev = nat.empty_set();
        for n in 1..=8 {
            let stage = nat
                .closure_of_points(&(0..n).map(Point).collect::<Vec<_>>())
                .unwrap();
            assert!(prev.subset(&stage).unwrap() && prev != stage);
            assert!(stage.stature() < all.stature());
            prev = stage;
        }
    }

    #[test]
    fn singleton_closures_are_principal_ideals() {
        let wedge = Space::finite_poset(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        let down_b = close(&wedge, &["b"]);
        assert_eq!(down_b.points().unwrap(), vec![pt(&wedge, "a"), pt(&wedge, "b")]);
        assert!(down_b.is_irreducible());
        assert_eq!(down_b.maximal_points().unwrap(), vec![pt(&wedge, "b")]);
        let both = close(&wedge, &["b", "c"]);
        assert_eq!(both.maximal_points().unwrap(), vec![pt(&wedge, "b"), pt(&wedge, "c")]);
        assert!(!both.is_irreducible());
    }
}
