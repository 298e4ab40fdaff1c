//! The five groups of order `p^3` for odd `p`: exact element arithmetic,
//! centers, conjugacy classes, and fixed generator lists.
//!
//! Elements are canonical coordinate tuples, reduced into their residue
//! ranges, so equality and hashing are O(1); the defining matrix forms are
//! used only to derive the multiplication laws. The two non-abelian
//! families are
//!
//! * `Heis`: 3x3 upper unitriangular matrices over `Z_p`, coordinates
//!   `(alpha, beta, gamma)` for the three free entries,
//! * `Gp`: 2x2 matrices `[[1 + p*gamma, delta], [0, 1]]` over `Z_{p^2}`,
//!   coordinates `(gamma, delta)`,
//!
//! and the abelian families are plain residue tuples. All groups are
//! materialized in full (at most 343 elements) since the class and
//! verification sweeps walk every element anyway. Generator ordering is
//! frozen so that every derived table is reproducible bit for bit.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::cyclo::OddPrime;

/// The five isomorphism classes of groups of order `p^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupFamily {
    /// Heisenberg group: exponent `p`, non-abelian.
    Heis,
    /// The non-abelian group with an element of order `p^2`.
    Gp,
    /// Cyclic `Z_{p^3}`.
    Zp3,
    /// `Z_{p^2} x Z_p`.
    Zp2xZp,
    /// `Z_p x Z_p x Z_p`.
    ZpxZpxZp,
}

impl GroupFamily {
    pub const ALL: [GroupFamily; 5] = [
        GroupFamily::Heis,
        GroupFamily::Gp,
        GroupFamily::Zp3,
        GroupFamily::Zp2xZp,
        GroupFamily::ZpxZpxZp,
    ];

    pub fn is_abelian(self) -> bool {
        !matches!(self, GroupFamily::Heis | GroupFamily::Gp)
    }

    /// Number of conjugacy classes, which equals the number of
    /// irreducible representations.
    pub fn class_count(self, p: OddPrime) -> usize {
        if self.is_abelian() {
            p.cubed() as usize
        } else {
            (p.squared() + p.get() - 1) as usize
        }
    }

    /// Irrep degrees in the frozen global order: all 1 for abelian
    /// families; `p^2` ones followed by `p - 1` entries of `p` otherwise.
    pub fn degrees(self, p: OddPrime) -> Vec<u64> {
        if self.is_abelian() {
            vec![1; p.cubed() as usize]
        } else {
            let mut d = vec![1; p.squared() as usize];
            d.extend(std::iter::repeat_n(p.get(), p.get() as usize - 1));
            d
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            GroupFamily::Heis => "heis",
            GroupFamily::Gp => "gp",
            GroupFamily::Zp3 => "zp3",
            GroupFamily::Zp2xZp => "zp2xzp",
            GroupFamily::ZpxZpxZp => "zpxzpxzp",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        GroupFamily::ALL
            .iter()
            .copied()
            .find(|f| f.tag() == s.to_ascii_lowercase())
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A group element as a canonical coordinate triple; unused coordinates
/// stay zero. Interpretation depends on the owning group's family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElem([u64; 3]);

impl GroupElem {
    pub fn coords(self) -> [u64; 3] {
        self.0
    }
}

/// A presentation relation: a word in the generators (index, exponent)
/// that must evaluate to the identity.
#[derive(Debug, Clone)]
pub struct Relation {
    pub name: String,
    pub word: Vec<(usize, i64)>,
}

/// One of the five groups of order `p^3`, fully materialized.
#[derive(Debug, Clone)]
pub struct Group {
    family: GroupFamily,
    p: OddPrime,
    elements: Vec<GroupElem>,
    index: HashMap<GroupElem, usize>,
    generators: Vec<GroupElem>,
    generator_names: Vec<&'static str>,
    relations: Vec<Relation>,
}

/// Constructs the requested group with its canonical generator list:
/// `(x, a)` for `Heis`, `(x, y)` for `Gp`, and unit residue tuples for the
/// abelian families.
pub fn make_group(family: GroupFamily, p: OddPrime) -> Group {
    Group::new(family, p)
}

impl Group {
    pub fn new(family: GroupFamily, p: OddPrime) -> Self {
        let pv = p.get();
        let ranges: [u64; 3] = match family {
            GroupFamily::Heis => [pv, pv, pv],
            GroupFamily::Gp => [pv, pv * pv, 1],
            GroupFamily::Zp3 => [pv * pv * pv, 1, 1],
            GroupFamily::Zp2xZp => [pv * pv, pv, 1],
            GroupFamily::ZpxZpxZp => [pv, pv, pv],
        };
        let mut elements = Vec::with_capacity((ranges[0] * ranges[1] * ranges[2]) as usize);
        for a in 0..ranges[0] {
            for b in 0..ranges[1] {
                for c in 0..ranges[2] {
                    elements.push(GroupElem([a, b, c]));
                }
            }
        }
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        let (generators, generator_names): (Vec<GroupElem>, Vec<&'static str>) = match family {
            GroupFamily::Heis => (
                vec![GroupElem([1, 0, 0]), GroupElem([0, 0, 1])],
                vec!["x", "a"],
            ),
            GroupFamily::Gp => (
                vec![GroupElem([1, 0, 0]), GroupElem([0, 1, 0])],
                vec!["x", "y"],
            ),
            GroupFamily::Zp3 => (vec![GroupElem([1, 0, 0])], vec!["a"]),
            GroupFamily::Zp2xZp => (
                vec![GroupElem([1, 0, 0]), GroupElem([0, 1, 0])],
                vec!["a", "b"],
            ),
            GroupFamily::ZpxZpxZp => (
                vec![
                    GroupElem([1, 0, 0]),
                    GroupElem([0, 1, 0]),
                    GroupElem([0, 0, 1]),
                ],
                vec!["a", "b", "c"],
            ),
        };
        let relations = Self::presentation_relations(family, p);
        Group {
            family,
            p,
            elements,
            index,
            generators,
            generator_names,
            relations,
        }
    }

    fn presentation_relations(family: GroupFamily, p: OddPrime) -> Vec<Relation> {
        let pv = p.get() as i64;
        let rel = |name: &str, word: Vec<(usize, i64)>| Relation {
            name: name.to_string(),
            word,
        };
        match family {
            GroupFamily::Heis => vec![
                rel("x^p = 1", vec![(0, pv)]),
                rel("a^p = 1", vec![(1, pv)]),
                rel(
                    "x(a^-1 x a)x^-1 = a^-1 x a",
                    vec![
                        (0, 1),
                        (1, -1),
                        (0, 1),
                        (1, 1),
                        (0, -1),
                        (1, -1),
                        (0, -1),
                        (1, 1),
                    ],
                ),
                rel(
                    "a(x a x^-1)a^-1 = x a x^-1",
                    vec![
                        (1, 1),
                        (0, 1),
                        (1, 1),
                        (0, -1),
                        (1, -1),
                        (0, 1),
                        (1, -1),
                        (0, -1),
                    ],
                ),
            ],
            GroupFamily::Gp => vec![
                rel("x^p = 1", vec![(0, pv)]),
                rel("y^(p^2) = 1", vec![(1, pv * pv)]),
                rel("x y = y^(p+1) x", vec![(0, 1), (1, 1), (0, -1), (1, -(pv + 1))]),
            ],
            GroupFamily::Zp3 => vec![rel("a^(p^3) = 1", vec![(0, pv * pv * pv)])],
            GroupFamily::Zp2xZp => vec![
                rel("a^(p^2) = 1", vec![(0, pv * pv)]),
                rel("b^p = 1", vec![(1, pv)]),
                rel("ab = ba", vec![(0, 1), (1, 1), (0, -1), (1, -1)]),
            ],
            GroupFamily::ZpxZpxZp => vec![
                rel("a^p = 1", vec![(0, pv)]),
                rel("b^p = 1", vec![(1, pv)]),
                rel("c^p = 1", vec![(2, pv)]),
                rel("ab = ba", vec![(0, 1), (1, 1), (0, -1), (1, -1)]),
                rel("ac = ca", vec![(0, 1), (2, 1), (0, -1), (2, -1)]),
                rel("bc = cb", vec![(1, 1), (2, 1), (1, -1), (2, -1)]),
            ],
        }
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn prime(&self) -> OddPrime {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.p.cubed()
    }

    pub fn elements(&self) -> &[GroupElem] {
        &self.elements
    }

    pub fn element_index(&self, g: GroupElem) -> usize {
        self.index[&g]
    }

    pub fn generators(&self) -> &[GroupElem] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[&'static str] {
        &self.generator_names
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem([0, 0, 0])
    }

    pub fn multiply(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        let p = self.p.get();
        let p2 = p * p;
        let (x, y) = (a.0, b.0);
        match self.family {
            GroupFamily::Heis => GroupElem([
                (x[0] + y[0]) % p,
                (x[1] + y[1] + x[0] * y[2]) % p,
                (x[2] + y[2]) % p,
            ]),
            GroupFamily::Gp => GroupElem([
                (x[0] + y[0]) % p,
                (x[1] + (1 + p * x[0]) * y[1]) % p2,
                0,
            ]),
            GroupFamily::Zp3 => GroupElem([(x[0] + y[0]) % (p2 * p), 0, 0]),
            GroupFamily::Zp2xZp => GroupElem([(x[0] + y[0]) % p2, (x[1] + y[1]) % p, 0]),
            GroupFamily::ZpxZpxZp => GroupElem([
                (x[0] + y[0]) % p,
                (x[1] + y[1]) % p,
                (x[2] + y[2]) % p,
            ]),
        }
    }

    pub fn inverse(&self, g: GroupElem) -> GroupElem {
        let p = self.p.get();
        let p2 = p * p;
        let x = g.0;
        let neg = |v: u64, m: u64| (m - v % m) % m;
        match self.family {
            GroupFamily::Heis => GroupElem([
                neg(x[0], p),
                (x[0] * x[2] + neg(x[1], p)) % p,
                neg(x[2], p),
            ]),
            GroupFamily::Gp => {
                // (1 + p*gamma)^-1 = 1 - p*gamma in Z_{p^2}.
                let inv_unit = (1 + p2 - p * x[0]) % p2;
                GroupElem([neg(x[0], p), (neg(x[1], p2) * inv_unit) % p2, 0])
            }
            GroupFamily::Zp3 => GroupElem([neg(x[0], p2 * p), 0, 0]),
            GroupFamily::Zp2xZp => GroupElem([neg(x[0], p2), neg(x[1], p), 0]),
            GroupFamily::ZpxZpxZp => {
                GroupElem([neg(x[0], p), neg(x[1], p), neg(x[2], p)])
            }
        }
    }

    /// `g^e` for any integer exponent.
    pub fn power(&self, g: GroupElem, e: i64) -> GroupElem {
        let (mut base, mut e) = if e < 0 {
            (self.inverse(g), (-e) as u64)
        } else {
            (g, e as u64)
        };
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(base, base);
            }
        }
        acc
    }

    pub fn element_order(&self, g: GroupElem) -> u64 {
        let mut cur = g;
        let mut n = 1;
        while cur != self.identity() {
            cur = self.multiply(cur, g);
            n += 1;
        }
        n
    }

    /// Evaluates a generator word `prod gen[i]^e` in the group.
    pub fn eval_word(&self, word: &[(usize, i64)]) -> GroupElem {
        let mut acc = self.identity();
        for &(gi, e) in word {
            acc = self.multiply(acc, self.power(self.generators[gi], e));
        }
        acc
    }

    /// The exact center, by commuting test against all elements.
    pub fn center(&self) -> Vec<GroupElem> {
        self.elements
            .iter()
            .copied()
            .filter(|&z| {
                self.elements
                    .iter()
                    .all(|&g| self.multiply(z, g) == self.multiply(g, z))
            })
            .collect()
    }

    /// The conjugacy-class partition, classes ordered by their minimal
    /// element (so the identity class is first).
    pub fn conjugacy_classes(&self) -> ConjClasses {
        let mut class_index = vec![usize::MAX; self.elements.len()];
        let mut classes: Vec<Vec<GroupElem>> = Vec::new();
        for (i, &g) in self.elements.iter().enumerate() {
            if class_index[i] != usize::MAX {
                continue;
            }
            let mut orbit = BTreeSet::new();
            for &h in &self.elements {
                orbit.insert(self.multiply(self.multiply(h, g), self.inverse(h)));
            }
            let id = classes.len();
            for &e in &orbit {
                class_index[self.index[&e]] = id;
            }
            classes.push(orbit.into_iter().collect());
        }
        let inverse_class = classes
            .iter()
            .map(|c| class_index[self.index[&self.inverse(c[0])]])
            .collect();
        ConjClasses {
            classes,
            class_index,
            inverse_class,
        }
    }

    /// Renders an element in the family's coordinate notation.
    pub fn format_elem(&self, g: GroupElem) -> String {
        let c = g.0;
        match self.family {
            GroupFamily::Heis => format!("(({},{}),{})", c[0], c[1], c[2]),
            GroupFamily::Gp => format!("({},{})", c[0], c[1]),
            GroupFamily::Zp3 => format!("{}", c[0]),
            GroupFamily::Zp2xZp => format!("({},{})", c[0], c[1]),
            GroupFamily::ZpxZpxZp => format!("({},{},{})", c[0], c[1], c[2]),
        }
    }
}

/// The conjugacy-class partition of a group.
#[derive(Debug, Clone)]
pub struct ConjClasses {
    classes: Vec<Vec<GroupElem>>,
    class_index: Vec<usize>,
    inverse_class: Vec<usize>,
}

impl ConjClasses {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<GroupElem>] {
        &self.classes
    }

    pub fn representative(&self, class: usize) -> GroupElem {
        self.classes[class][0]
    }

    pub fn size(&self, class: usize) -> usize {
        self.classes[class].len()
    }

    /// Class index of `g`, given the element's index within the group.
    pub fn class_of_index(&self, elem_index: usize) -> usize {
        self.class_index[elem_index]
    }

    /// Index of the class containing the inverses of class `class`.
    pub fn inverse_class(&self, class: usize) -> usize {
        self.inverse_class[class]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    #[test]
    fn group_orders() {
        for family in GroupFamily::ALL {
            let g = make_group(family, p(3));
            assert_eq!(g.elements().len(), 27);
            assert_eq!(g.order(), 27);
        }
    }

    #[test]
    fn gp_generator_y_has_order_p_squared() {
        let g = make_group(GroupFamily::Gp, p(3));
        let y = g.generators()[1];
        assert_eq!(y.coords(), [0, 1, 0]);
        assert_eq!(g.element_order(y), 9);
    }

    #[test]
    fn zp3_generator_has_order_p_cubed() {
        let g = make_group(GroupFamily::Zp3, p(3));
        assert_eq!(g.element_order(g.generators()[0]), 27);
    }

    #[test]
    fn heis_commutator_is_central() {
        let g = make_group(GroupFamily::Heis, p(3));
        let (x, a) = (g.generators()[0], g.generators()[1]);
        let z = g.eval_word(&[(0, 1), (1, 1), (0, -1), (1, -1)]);
        assert_eq!(z.coords(), [0, 1, 0]);
        // z commutes with both generators.
        assert_eq!(g.multiply(z, x), g.multiply(x, z));
        assert_eq!(g.multiply(z, a), g.multiply(a, z));
        assert!(g.center().contains(&z));
    }

    #[test]
    fn inverse_is_two_sided() {
        for family in GroupFamily::ALL {
            let g = make_group(family, p(3));
            for &e in g.elements() {
                assert_eq!(g.multiply(e, g.inverse(e)), g.identity());
                assert_eq!(g.multiply(g.inverse(e), e), g.identity());
            }
        }
    }

    #[test]
    fn gp_braiding_law() {
        // x y = y^{p+1} x.
        let g = make_group(GroupFamily::Gp, p(3));
        let (x, y) = (g.generators()[0], g.generators()[1]);
        let lhs = g.multiply(x, y);
        let rhs = g.multiply(g.power(y, 4), x);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn presentation_relations_hold() {
        for family in GroupFamily::ALL {
            for pv in [3, 5] {
                let g = make_group(family, p(pv));
                for rel in g.relations() {
                    assert_eq!(
                        g.eval_word(&rel.word),
                        g.identity(),
                        "{family:?} p={pv}: relation {} failed",
                        rel.name
                    );
                }
            }
        }
    }

    #[test]
    fn center_sizes() {
        assert_eq!(make_group(GroupFamily::Heis, p(3)).center().len(), 3);
        assert_eq!(make_group(GroupFamily::Zp3, p(3)).center().len(), 27);
        let g = make_group(GroupFamily::Gp, p(5));
        let center = g.center();
        assert_eq!(center.len(), 5);
        // Center is generated by y^p.
        let yp = g.power(g.generators()[1], 5);
        for m in 0..5 {
            assert!(center.contains(&g.power(yp, m)));
        }
    }

    #[test]
    fn conjugacy_class_shapes() {
        let g = make_group(GroupFamily::Heis, p(3));
        let cc = g.conjugacy_classes();
        assert_eq!(cc.count(), 11);
        let singletons = (0..cc.count()).filter(|&c| cc.size(c) == 1).count();
        let triples = (0..cc.count()).filter(|&c| cc.size(c) == 3).count();
        assert_eq!((singletons, triples), (3, 8));

        let g = make_group(GroupFamily::ZpxZpxZp, p(3));
        assert_eq!(g.conjugacy_classes().count(), 27);

        let g = make_group(GroupFamily::Gp, p(5));
        assert_eq!(g.conjugacy_classes().count(), 29);
    }

    #[test]
    fn class_equation_sums_to_group_order() {
        for family in GroupFamily::ALL {
            for pv in [3, 5, 7] {
                let g = make_group(family, p(pv));
                let cc = g.conjugacy_classes();
                let total: usize = (0..cc.count()).map(|c| cc.size(c)).sum();
                assert_eq!(total as u64, g.order());
                assert_eq!(cc.count(), family.class_count(p(pv)));
            }
        }
    }

    #[test]
    fn element_order_spectrum() {
        // Heis: every non-identity element has order p.
        let g = make_group(GroupFamily::Heis, p(3));
        for &e in g.elements() {
            if e != g.identity() {
                assert_eq!(g.element_order(e), 3);
            }
        }
        // Gp: an element of order p^2 exists, none of order p^3.
        let g = make_group(GroupFamily::Gp, p(3));
        let orders: Vec<u64> = g.elements().iter().map(|&e| g.element_order(e)).collect();
        assert!(orders.contains(&9));
        assert!(!orders.contains(&27));
    }

    #[test]
    fn inverse_classes_pair_up() {
        let g = make_group(GroupFamily::Gp, p(3));
        let cc = g.conjugacy_classes();
        for c in 0..cc.count() {
            let ic = cc.inverse_class(c);
            assert_eq!(cc.inverse_class(ic), c);
            assert_eq!(cc.size(c), cc.size(ic));
        }
    }
}
