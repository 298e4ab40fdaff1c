//! Complete lists of irreducible representations for each group of order
//! `p^3`, with the duality pairing.
//!
//! Degree-1 characters are constructed canonically as homomorphisms into
//! the group of `p^3`-th roots of unity, determined by generator images
//! consistent with the generator orders; the degree-`p` representations of
//! the two non-abelian families are shift-and-diagonal monomial matrices.
//! Construction is the ground truth and everything is verified at build
//! time: presentation relations on the generator images, constancy of
//! characters on conjugacy classes, exact Schur orthogonality, and the
//! computed duality involution. Any failure is a hard error naming the
//! offending representation and check.
//!
//! The global order is frozen: index 1 is the trivial representation;
//! the remaining degree-1 characters come in dual-adjacent pairs
//! `(2i, 2i+1)` sorted by generator-image exponents; the degree-`p`
//! representations come last, also dual-adjacent. Exactly one index is
//! self-dual (the trivial one): no other irreducible of a `p`-group can
//! equal its dual, since a non-trivial central element acts by a root of
//! unity other than +-1.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclo::{CycloAcc, CycloNum, OddPrime, RootTable};
use crate::error::Error;
use crate::groups::{ConjClasses, Group, GroupElem, GroupFamily};
use crate::matrix::CycloMatrix;

/// The set `A_G` of ordered index pairs `(i, j)` with `rho_j` dual to
/// `rho_i`. Exactly one self-dual index (the trivial representation);
/// every other pair is adjacent as `(2i, 2i+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPairing {
    r: usize,
    pairs: Vec<(usize, usize)>,
}

impl DualPairing {
    /// The adjacency layout implied by the frozen ordering: `1 <-> 1` and
    /// `(2i, 2i+1)` for `1 <= i <= (r-1)/2`. The irrep builder verifies
    /// the computed duality map against this shape.
    pub fn structural(r: usize) -> Self {
        assert!(r % 2 == 1, "class counts of p-groups of odd order are odd");
        let mut pairs = vec![(1, 1)];
        for i in (2..r).step_by(2) {
            pairs.push((i, i + 1));
            pairs.push((i + 1, i));
        }
        pairs.sort_unstable();
        DualPairing { r, pairs }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// All ordered pairs, ascending.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn dual_of(&self, i: usize) -> usize {
        debug_assert!((1..=self.r).contains(&i));
        if i == 1 {
            1
        } else if i.is_multiple_of(2) {
            i + 1
        } else {
            i - 1
        }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.dual_of(i) == j
    }
}

/// Character storage: degree-1 characters are pure roots of unity and
/// keep only the exponent per class; degree-`p` characters hold reduced
/// field elements.
#[derive(Debug, Clone)]
enum CharData {
    Exponents(Vec<u64>),
    Values(Vec<CycloNum>),
}

/// One irreducible representation in the frozen global order.
#[derive(Debug, Clone)]
pub struct Irrep {
    index: usize,
    degree: usize,
    gen_images: Vec<CycloMatrix>,
    character: CharData,
    dual_index: usize,
    /// Degree-1 only: the `w`-exponent of each generator image.
    gen_exponents: Option<Vec<u64>>,
    /// Heisenberg degree-p only: the image of the commutator generator.
    central_image: Option<CycloMatrix>,
}

impl Irrep {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gen_images(&self) -> &[CycloMatrix] {
        &self.gen_images
    }

    pub fn dual_index(&self) -> usize {
        self.dual_index
    }

    /// `w`-exponents per conjugacy class, when the character is a pure
    /// root of unity everywhere (always true in degree 1).
    pub fn character_exponents(&self) -> Option<&[u64]> {
        match &self.character {
            CharData::Exponents(e) => Some(e),
            CharData::Values(_) => None,
        }
    }
}

/// A group bundled with its class data and complete verified irrep list.
pub struct IrrepSet {
    group: Group,
    classes: ConjClasses,
    roots: RootTable,
    irreps: Vec<Irrep>,
    pairing: DualPairing,
}

/// Monomial matrix in compact form: row `i` carries `w^{exp[i]}` in
/// column `col[i]`. Every generator image here is of this shape, so whole
/// group sweeps run on integer data.
type MonoKey = Vec<(usize, u64)>;

/// Builds, orders and verifies the full irrep list of `group`.
pub fn build_irreps(group: &Group) -> Result<IrrepSet, Error> {
    IrrepSet::build(group)
}

impl IrrepSet {
    fn build(group: &Group) -> Result<Self, Error> {
        let p = group.prime();
        let family = group.family();
        let classes = group.conjugacy_classes();
        let roots = RootTable::new(p);
        let r = family.class_count(p);

        // Degree-1 characters: trivial first, then dual-adjacent pairs
        // sorted by generator-image exponent tuples.
        let mut tuples: BTreeSet<Vec<u64>> =
            degree_one_exponents(family, p).into_iter().collect();
        let gen_count = group.generators().len();
        let trivial = vec![0u64; gen_count];
        if !tuples.remove(&trivial) {
            return Err(Error::Verification {
                index: 1,
                check: "trivial character missing from construction".into(),
            });
        }
        let order = p.cubed();
        let mut ordered: Vec<Vec<u64>> = vec![trivial];
        while let Some(t) = tuples.pop_first() {
            let partner: Vec<u64> = t.iter().map(|&e| (order - e) % order).collect();
            if !tuples.remove(&partner) {
                return Err(Error::Verification {
                    index: ordered.len() + 1,
                    check: "degree-1 character has no dual partner".into(),
                });
            }
            ordered.push(t);
            ordered.push(partner);
        }

        let mut irreps: Vec<Irrep> = Vec::with_capacity(r);
        for exps in &ordered {
            let index = irreps.len() + 1;
            let gen_images = exps
                .iter()
                .map(|&e| {
                    CycloMatrix::from_fn(p, 1, 1, |_, _| roots.power(e).clone())
                })
                .collect();
            let char_exps: Vec<u64> = (0..classes.count())
                .map(|c| {
                    degree_one_exponent_at(family, p, exps, classes.representative(c))
                })
                .collect();
            irreps.push(Irrep {
                index,
                degree: 1,
                gen_images,
                character: CharData::Exponents(char_exps),
                dual_index: 0,
                gen_exponents: Some(exps.clone()),
                central_image: None,
            });
        }

        // Degree-p representations for the non-abelian families, in
        // dual-adjacent pairs (sigma_{2 eta - 1}, sigma_{2 eta}).
        if !family.is_abelian() {
            for eta in 1..=(p.get() - 1) / 2 {
                for half in 0..2 {
                    let index = irreps.len() + 1;
                    let gen_images = degree_p_images(family, p, eta, half == 1, &roots);
                    let central_image = match family {
                        GroupFamily::Heis => {
                            let x = &gen_images[0];
                            let a = &gen_images[1];
                            let xi = x.inverse().ok_or_else(|| Error::Verification {
                                index,
                                check: "generator image is singular".into(),
                            })?;
                            let ai = a.inverse().ok_or_else(|| Error::Verification {
                                index,
                                check: "generator image is singular".into(),
                            })?;
                            Some(x.mul(a).mul(&xi).mul(&ai))
                        }
                        _ => None,
                    };
                    let mut irrep = Irrep {
                        index,
                        degree: p.get() as usize,
                        gen_images,
                        character: CharData::Values(Vec::new()),
                        dual_index: 0,
                        gen_exponents: None,
                        central_image,
                    };
                    let values: Vec<CycloNum> = (0..classes.count())
                        .map(|c| {
                            rep_matrix_of(group, &irrep, &roots, classes.representative(c))
                                .trace()
                        })
                        .collect();
                    irrep.character = CharData::Values(values);
                    irreps.push(irrep);
                }
            }
        }

        if irreps.len() != r {
            return Err(Error::Verification {
                index: 0,
                check: format!("expected {r} irreps, constructed {}", irreps.len()),
            });
        }

        let mut set = IrrepSet {
            group: group.clone(),
            classes,
            roots,
            irreps,
            pairing: DualPairing::structural(r),
        };
        set.verify_relations()?;
        set.verify_class_constancy()?;
        set.verify_degree_sum()?;
        set.verify_orthogonality()?;
        set.assign_and_verify_duals()?;
        Ok(set)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn classes(&self) -> &ConjClasses {
        &self.classes
    }

    pub fn roots(&self) -> &RootTable {
        &self.roots
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn irrep(&self, index: usize) -> &Irrep {
        &self.irreps[index - 1]
    }

    pub fn count(&self) -> usize {
        self.irreps.len()
    }

    pub fn pairing(&self) -> &DualPairing {
        &self.pairing
    }

    /// Computed dual: the index `j` with `chi_j(g) = chi_i(g^{-1})`.
    pub fn dual_of(&self, index: usize) -> usize {
        self.irreps[index - 1].dual_index
    }

    /// Character value of irrep `index` on class `class`.
    pub fn character_value(&self, index: usize, class: usize) -> CycloNum {
        match &self.irreps[index - 1].character {
            CharData::Exponents(e) => self.roots.power(e[class]).clone(),
            CharData::Values(v) => v[class].clone(),
        }
    }

    /// `(1/|G|) sum_g chi_i(g) chi_j(g^{-1})`, exactly; 1 iff `i = j`.
    pub fn character_inner_product(&self, i: usize, j: usize) -> CycloNum {
        let p = self.group.prime();
        let mut acc = CycloAcc::new(p);
        for c in 0..self.classes.count() {
            let a = self.character_value(i, c);
            if a.is_zero() {
                continue;
            }
            let b = self.character_value(j, self.classes.inverse_class(c));
            if b.is_zero() {
                continue;
            }
            let size = BigRational::from_integer(BigInt::from(self.classes.size(c)));
            acc.add_mul(&a.scale(&size), &b);
        }
        let inv_order = BigRational::new(BigInt::from(1), BigInt::from(self.group.order()));
        acc.finish().scale(&inv_order)
    }

    /// Image of `g` under irrep `index`, by factoring `g` into generators
    /// and multiplying generator images.
    pub fn rep_matrix(&self, index: usize, g: GroupElem) -> CycloMatrix {
        rep_matrix_of(&self.group, &self.irreps[index - 1], &self.roots, g)
    }

    fn verify_relations(&self) -> Result<(), Error> {
        for irrep in &self.irreps {
            for rel in self.group.relations() {
                let mut acc = CycloMatrix::identity(self.group.prime(), irrep.degree);
                for &(gi, e) in &rel.word {
                    let m = &irrep.gen_images[gi];
                    let powered = if e >= 0 {
                        m.pow(e as u64)
                    } else {
                        m.inverse()
                            .ok_or_else(|| Error::Verification {
                                index: irrep.index,
                                check: format!("singular generator image in '{}'", rel.name),
                            })?
                            .pow((-e) as u64)
                    };
                    acc = acc.mul(&powered);
                }
                if !acc.is_identity() {
                    return Err(Error::Verification {
                        index: irrep.index,
                        check: format!("presentation relation '{}'", rel.name),
                    });
                }
            }
        }
        Ok(())
    }

    /// Characters must be constant on conjugacy classes. Degree-1
    /// characters are checked through the exponent homomorphism; degree-p
    /// characters by walking every element image in compact monomial form
    /// (an independent path from the stored per-representative traces).
    fn verify_class_constancy(&self) -> Result<(), Error> {
        let family = self.group.family();
        let p = self.group.prime();
        for irrep in &self.irreps {
            match &irrep.character {
                CharData::Exponents(exps) => {
                    let gexps = irrep.gen_exponents.as_ref().expect("degree-1 irrep");
                    for (c, class) in self.classes.classes().iter().enumerate() {
                        for &g in class {
                            if degree_one_exponent_at(family, p, gexps, g) != exps[c] {
                                return Err(Error::Verification {
                                    index: irrep.index,
                                    check: format!(
                                        "character not constant on class {c}"
                                    ),
                                });
                            }
                        }
                    }
                }
                CharData::Values(values) => {
                    let keys = self.element_keys(irrep)?;
                    for (c, class) in self.classes.classes().iter().enumerate() {
                        for &g in class {
                            let key = &keys[self.group.element_index(g)];
                            if trace_of_key(p, &self.roots, key) != values[c] {
                                return Err(Error::Verification {
                                    index: irrep.index,
                                    check: format!(
                                        "character not constant on class {c}"
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn verify_degree_sum(&self) -> Result<(), Error> {
        let sum: u64 = self.irreps.iter().map(|i| (i.degree * i.degree) as u64).sum();
        if sum != self.group.order() {
            return Err(Error::Verification {
                index: 0,
                check: format!("sum of squared degrees is {sum}, not {}", self.group.order()),
            });
        }
        Ok(())
    }

    /// Exact Schur orthogonality: the full inner-product matrix must be
    /// the identity. Pairs of exponent-valued characters reduce to pure
    /// integer arithmetic (the reduced form of any `w^e` has coefficients
    /// in {0, +-1} on known slots); anything touching a degree-p
    /// character falls back to field arithmetic, which stays cheap since
    /// those characters vanish off-center.
    fn verify_orthogonality(&self) -> Result<(), Error> {
        let p = self.group.prime();
        let order = p.cubed() as usize;
        let phi = p.field_degree();
        let p2 = p.squared() as usize;
        // Reduced coefficient slots of w^e: one +1 slot below the field
        // degree, p-1 slots of -1 above it.
        let minus_slots = |e: usize| (0..p.get() as usize - 1).map(move |k| e - phi + k * p2);
        let mut counts = vec![0i64; order];
        let mut coeffs = vec![0i64; phi];
        for i in 1..=self.irreps.len() {
            for j in i..=self.irreps.len() {
                let ok = match (
                    self.irreps[i - 1].character_exponents(),
                    self.irreps[j - 1].character_exponents(),
                ) {
                    (Some(ei), Some(ej)) => {
                        counts.iter_mut().for_each(|c| *c = 0);
                        coeffs.iter_mut().for_each(|c| *c = 0);
                        for c in 0..self.classes.count() {
                            let e = (ei[c] + ej[self.classes.inverse_class(c)]) as usize % order;
                            counts[e] += self.classes.size(c) as i64;
                        }
                        for (e, &cnt) in counts.iter().enumerate() {
                            if cnt == 0 {
                                continue;
                            }
                            if e < phi {
                                coeffs[e] += cnt;
                            } else {
                                for slot in minus_slots(e) {
                                    coeffs[slot] -= cnt;
                                }
                            }
                        }
                        let want = if i == j { order as i64 } else { 0 };
                        coeffs[0] == want && coeffs[1..].iter().all(|&c| c == 0)
                    }
                    _ => {
                        let value = self.character_inner_product(i, j);
                        if i == j {
                            value.is_one()
                        } else {
                            value.is_zero()
                        }
                    }
                };
                if !ok {
                    return Err(Error::Verification {
                        index: i,
                        check: format!("orthogonality against irrep {j}"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Computes the dual of every irrep from characters alone and checks
    /// the involution, the single fixed point, and adjacency with the
    /// frozen ordering. Exponent-valued characters match on integer
    /// keys; degree-p characters match on exact value vectors (the two
    /// families cannot collide: characters determine the degree at the
    /// identity class).
    fn assign_and_verify_duals(&mut self) -> Result<(), Error> {
        let r = self.irreps.len();
        let n_classes = self.classes.count();
        let mut by_exps: HashMap<&[u64], usize> = HashMap::with_capacity(r);
        let mut by_vals: HashMap<Vec<CycloNum>, usize> = HashMap::new();
        for i in 1..=r {
            match &self.irreps[i - 1].character {
                CharData::Exponents(e) => {
                    by_exps.insert(e.as_slice(), i);
                }
                CharData::Values(v) => {
                    by_vals.insert(v.clone(), i);
                }
            }
        }
        let mut duals = vec![0usize; r];
        for i in 1..=r {
            let found = match &self.irreps[i - 1].character {
                CharData::Exponents(e) => {
                    let inv: Vec<u64> = (0..n_classes)
                        .map(|c| e[self.classes.inverse_class(c)])
                        .collect();
                    by_exps.get(inv.as_slice()).copied()
                }
                CharData::Values(v) => {
                    let inv: Vec<CycloNum> = (0..n_classes)
                        .map(|c| v[self.classes.inverse_class(c)].clone())
                        .collect();
                    by_vals.get(&inv).copied()
                }
            };
            duals[i - 1] = found.ok_or_else(|| Error::Verification {
                index: i,
                check: "no dual found in the constructed list".into(),
            })?;
        }
        for i in 1..=r {
            if duals[duals[i - 1] - 1] != i {
                return Err(Error::Verification {
                    index: i,
                    check: "duality is not an involution".into(),
                });
            }
            if duals[i - 1] != self.pairing.dual_of(i) {
                return Err(Error::Verification {
                    index: i,
                    check: format!(
                        "dual is {} but the frozen ordering requires {}",
                        duals[i - 1],
                        self.pairing.dual_of(i)
                    ),
                });
            }
        }
        if duals.iter().enumerate().filter(|(i, &d)| d == i + 1).count() != 1 {
            return Err(Error::Verification {
                index: 0,
                check: "exactly one self-dual irrep expected".into(),
            });
        }
        for (i, irrep) in self.irreps.iter_mut().enumerate() {
            irrep.dual_index = duals[i];
        }
        Ok(())
    }

    /// Compact monomial images of every group element under a degree-p
    /// irrep, indexed by element position; BFS over the Cayley graph.
    fn element_keys(&self, irrep: &Irrep) -> Result<Vec<MonoKey>, Error> {
        let order = self.group.prime().cubed();
        let gen_keys: Vec<MonoKey> = irrep
            .gen_images
            .iter()
            .map(|m| {
                monomial_key(m, &self.roots).ok_or_else(|| Error::Verification {
                    index: irrep.index,
                    check: "generator image is not monomial".into(),
                })
            })
            .collect::<Result<_, _>>()?;
        let n = self.group.elements().len();
        let mut keys: Vec<Option<MonoKey>> = vec![None; n];
        let id_idx = self.group.element_index(self.group.identity());
        keys[id_idx] = Some(identity_key(irrep.degree));
        let mut queue = vec![self.group.identity()];
        while let Some(g) = queue.pop() {
            let gk = keys[self.group.element_index(g)].clone().unwrap();
            for (gen, gen_key) in self.group.generators().iter().zip(&gen_keys) {
                let h = self.group.multiply(g, *gen);
                let hi = self.group.element_index(h);
                if keys[hi].is_none() {
                    keys[hi] = Some(key_mul(&gk, gen_key, order));
                    queue.push(h);
                }
            }
        }
        keys.into_iter()
            .map(|k| {
                k.ok_or_else(|| Error::Verification {
                    index: irrep.index,
                    check: "generators do not span the group".into(),
                })
            })
            .collect()
    }

    /// True when `rep_matrix(index, .)` is injective on the group.
    pub fn is_faithful(&self, index: usize) -> bool {
        let irrep = &self.irreps[index - 1];
        if irrep.degree == 1 {
            // A 1-dimensional image is cyclic; faithful iff some
            // generator maps to an element of order p^3.
            return match &irrep.gen_exponents {
                Some(exps) => exps.iter().any(|&e| {
                    e != 0 && num_integer::gcd(e, self.group.prime().cubed()) == 1
                }),
                None => false,
            };
        }
        match self.element_keys(irrep) {
            Ok(keys) => {
                let distinct: BTreeSet<&MonoKey> = keys.iter().collect();
                distinct.len() == keys.len()
            }
            Err(_) => false,
        }
    }

    /// True when the irrep kills no trace anywhere off the center, i.e.
    /// every image of a non-central element has trace zero.
    pub fn trace_zero_off_center(&self, index: usize) -> bool {
        let irrep = &self.irreps[index - 1];
        let center: BTreeSet<GroupElem> = self.group.center().into_iter().collect();
        let p = self.group.prime();
        match self.element_keys(irrep) {
            Ok(keys) => self.group.elements().iter().all(|&g| {
                center.contains(&g)
                    || trace_of_key(p, &self.roots, &keys[self.group.element_index(g)])
                        .is_zero()
            }),
            Err(_) => false,
        }
    }

    /// True when the irrep maps the center to scalar matrices whose
    /// scalar has multiplicative order `p` away from the identity.
    pub fn center_scalar_of_order_p(&self, index: usize) -> bool {
        let p = self.group.prime();
        self.group.center().into_iter().all(|z| {
            let img = self.rep_matrix(index, z);
            match img.as_scalar() {
                Some(s) => {
                    if z == self.group.identity() {
                        s.is_one()
                    } else {
                        !s.is_one() && s.pow(p.get()).is_one()
                    }
                }
                None => false,
            }
        })
    }

    /// Character table as CSV: rows are irreps, columns are conjugacy
    /// class representatives; entries print as `w^k` for pure roots of
    /// unity and as reduced polynomials otherwise.
    pub fn character_table_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("irrep,degree,dual");
        for c in 0..self.classes.count() {
            out.push(',');
            out.push_str(&csv_field(&format!(
                "class {}",
                self.group.format_elem(self.classes.representative(c))
            )));
        }
        out.push('\n');
        for i in 1..=self.irreps.len() {
            let irrep = &self.irreps[i - 1];
            out.push_str(&format!("rho_{i},{},rho_{}", irrep.degree, irrep.dual_index));
            for c in 0..self.classes.count() {
                let v = self.character_value(i, c);
                out.push(',');
                out.push_str(&csv_field(&self.format_value(&v)));
            }
            out.push('\n');
        }
        out
    }

    /// `w^k` when the value is a pure root of unity, polynomial text
    /// otherwise.
    pub fn format_value(&self, v: &CycloNum) -> String {
        match self.roots.exponent_of(v) {
            Some(0) => "1".to_string(),
            Some(e) => format!("w^{e}"),
            None => v.to_string(),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Generator `w`-exponent tuples of all degree-1 characters.
///
/// Exponents are constrained by generator orders: a generator of order
/// `m` maps into the `m`-th roots of unity. For the non-abelian families
/// the degree-1 characters factor through the commutator quotient, so
/// both generators land in the `p`-th roots (`w`-exponents are multiples
/// of `p^2`).
fn degree_one_exponents(family: GroupFamily, p: OddPrime) -> Vec<Vec<u64>> {
    let pv = p.get();
    let p2 = p.squared();
    let mut out = Vec::new();
    match family {
        GroupFamily::Heis | GroupFamily::Gp => {
            for s in 0..pv {
                for t in 0..pv {
                    out.push(vec![p2 * s, p2 * t]);
                }
            }
        }
        GroupFamily::Zp3 => {
            for j in 0..p.cubed() {
                out.push(vec![j]);
            }
        }
        GroupFamily::Zp2xZp => {
            for s in 0..p2 {
                for t in 0..pv {
                    out.push(vec![pv * s, p2 * t]);
                }
            }
        }
        GroupFamily::ZpxZpxZp => {
            for s in 0..pv {
                for t in 0..pv {
                    for m in 0..pv {
                        out.push(vec![p2 * s, p2 * t, p2 * m]);
                    }
                }
            }
        }
    }
    out
}

/// `w`-exponent of a degree-1 character at `g`, from the normal form of
/// `g` as a generator word (commutator coordinates contribute nothing).
fn degree_one_exponent_at(
    family: GroupFamily,
    p: OddPrime,
    gen_exps: &[u64],
    g: GroupElem,
) -> u64 {
    let order = p.cubed();
    let c = g.coords();
    let acc = match family {
        // g = a^gamma x^alpha z^beta with z in the kernel.
        GroupFamily::Heis => gen_exps[0] * c[0] + gen_exps[1] * c[2],
        // g = y^delta x^gamma.
        GroupFamily::Gp => gen_exps[0] * c[0] + gen_exps[1] * c[1],
        GroupFamily::Zp3 => gen_exps[0] * c[0],
        GroupFamily::Zp2xZp => gen_exps[0] * c[0] + gen_exps[1] * c[1],
        GroupFamily::ZpxZpxZp => {
            gen_exps[0] * c[0] + gen_exps[1] * c[1] + gen_exps[2] * c[2]
        }
    };
    acc % order
}

/// The `p x p` cyclic shift: row `i` has a 1 in column `(i + 1) mod p`.
fn shift_matrix(p: OddPrime, roots: &RootTable) -> CycloMatrix {
    let n = p.get() as usize;
    CycloMatrix::from_fn(p, n, n, |r, c| {
        if c == (r + 1) % n {
            roots.power(0).clone()
        } else {
            CycloNum::zero(p)
        }
    })
}

fn diagonal(p: OddPrime, roots: &RootTable, exps: impl Iterator<Item = u64>) -> CycloMatrix {
    let n = p.get() as usize;
    let exps: Vec<u64> = exps.collect();
    CycloMatrix::from_fn(p, n, n, |r, c| {
        if r == c {
            roots.power(exps[r]).clone()
        } else {
            CycloNum::zero(p)
        }
    })
}

/// Generator images of the degree-p irreps.
///
/// For the Heisenberg family, with `eps = w^{p^2}`:
/// `sigma_{2 eta - 1}` sends `x` to the eta-th power of the cyclic shift
/// and `a` to `diag(eps^eta, eps^{eta+1}, ...)`; its dual `sigma_{2 eta}`
/// sends `x` to the inverse shift power and `a` to
/// `diag(eps^{p+1-eta}, ..., eps^{p-eta})`.
///
/// For `Gp`: `sigma_{2 eta - 1}` sends `x` to the same shift power and
/// `y` to `diag(w^{eta p}, w^{p^2 + eta p}, ..., w^{(p-1) p^2 + eta p})`;
/// `sigma_{2 eta}` uses the inverse shift and
/// `diag(w^{p^2 - eta p}, w^{2 p^2 - eta p}, ..., w^{p^3 - eta p})`.
fn degree_p_images(
    family: GroupFamily,
    p: OddPrime,
    eta: u64,
    dual_half: bool,
    roots: &RootTable,
) -> Vec<CycloMatrix> {
    let pv = p.get();
    let p2 = p.squared();
    let order = p.cubed();
    let shift = shift_matrix(p, roots);
    let x_img = if dual_half {
        shift.pow(pv - eta)
    } else {
        shift.pow(eta)
    };
    let diag_img = match family {
        GroupFamily::Heis => {
            if dual_half {
                diagonal(p, roots, (0..pv).map(|i| p2 * ((pv + 1 - eta + i) % pv)))
            } else {
                diagonal(p, roots, (0..pv).map(|i| p2 * ((eta + i) % pv)))
            }
        }
        GroupFamily::Gp => {
            if dual_half {
                diagonal(
                    p,
                    roots,
                    (0..pv).map(|i| ((i + 1) * p2 + order - eta * pv) % order),
                )
            } else {
                diagonal(p, roots, (0..pv).map(|i| (i * p2 + eta * pv) % order))
            }
        }
        _ => unreachable!("abelian families have no degree-p irreps"),
    };
    vec![x_img, diag_img]
}

/// Image of `g`: factor into generators per family normal form, multiply
/// powers of the generator images.
fn rep_matrix_of(group: &Group, irrep: &Irrep, roots: &RootTable, g: GroupElem) -> CycloMatrix {
    let p = group.prime();
    if irrep.degree == 1 {
        let exps = irrep.gen_exponents.as_ref().expect("degree-1 irrep");
        let e = degree_one_exponent_at(group.family(), p, exps, g);
        return CycloMatrix::from_fn(p, 1, 1, |_, _| roots.power(e).clone());
    }
    let c = g.coords();
    match group.family() {
        // g = a^gamma x^alpha z^beta.
        GroupFamily::Heis => {
            let x = &irrep.gen_images[0];
            let a = &irrep.gen_images[1];
            let z = irrep.central_image.as_ref().expect("Heisenberg degree-p");
            a.pow(c[2]).mul(&x.pow(c[0])).mul(&z.pow(c[1]))
        }
        // g = y^delta x^gamma.
        GroupFamily::Gp => {
            let x = &irrep.gen_images[0];
            let y = &irrep.gen_images[1];
            y.pow(c[1]).mul(&x.pow(c[0]))
        }
        _ => unreachable!("abelian families have no degree-p irreps"),
    }
}

fn monomial_key(m: &CycloMatrix, roots: &RootTable) -> Option<MonoKey> {
    let n = m.rows();
    let mut used = vec![false; n];
    let mut key = Vec::with_capacity(n);
    for r in 0..n {
        let mut found = None;
        for c in 0..m.cols() {
            let v = m.get(r, c);
            if v.is_zero() {
                continue;
            }
            if found.is_some() {
                return None;
            }
            found = Some((c, roots.exponent_of(v)?));
        }
        let (c, e) = found?;
        if used[c] {
            return None;
        }
        used[c] = true;
        key.push((c, e));
    }
    Some(key)
}

fn identity_key(n: usize) -> MonoKey {
    (0..n).map(|i| (i, 0)).collect()
}

fn key_mul(a: &MonoKey, b: &MonoKey, order: u64) -> MonoKey {
    a.iter()
        .map(|&(ca, ea)| {
            let (cb, eb) = b[ca];
            (cb, (ea + eb) % order)
        })
        .collect()
}

fn trace_of_key(p: OddPrime, roots: &RootTable, key: &MonoKey) -> CycloNum {
    let mut t = CycloNum::zero(p);
    for (i, &(c, e)) in key.iter().enumerate() {
        if c == i {
            t.add_assign(roots.power(e));
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::make_group;

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    fn build(family: GroupFamily, pv: u64) -> IrrepSet {
        build_irreps(&make_group(family, p(pv))).expect("construction verifies")
    }

    #[test]
    fn heis_p3_shape() {
        let set = build(GroupFamily::Heis, 3);
        assert_eq!(set.count(), 11);
        let degrees: Vec<usize> = set.irreps().iter().map(|i| i.degree()).collect();
        assert_eq!(&degrees[..9], &[1; 9]);
        assert_eq!(&degrees[9..], &[3, 3]);
        assert_eq!(set.dual_of(10), 11);
        assert_eq!(set.dual_of(11), 10);
    }

    #[test]
    fn abelian_shapes() {
        let set = build(GroupFamily::Zp3, 3);
        assert_eq!(set.count(), 27);
        assert!(set.irreps().iter().all(|i| i.degree() == 1));
        // Trivial representation maps the generator to 1.
        assert_eq!(set.irrep(1).gen_exponents.as_deref(), Some(&[0u64][..]));
        // The character a -> w sits at index 2, its dual a -> w^26 at 3.
        assert_eq!(set.irrep(2).gen_exponents.as_deref(), Some(&[1u64][..]));
        assert_eq!(set.irrep(3).gen_exponents.as_deref(), Some(&[26u64][..]));
    }

    #[test]
    fn dual_is_involution_with_one_fixed_point() {
        for family in GroupFamily::ALL {
            let set = build(family, 3);
            let fixed = (1..=set.count())
                .filter(|&i| set.dual_of(i) == i)
                .count();
            assert_eq!(fixed, 1);
            for i in 1..=set.count() {
                assert_eq!(set.dual_of(set.dual_of(i)), i);
                // Adjacent pairing (2i, 2i+1).
                assert_eq!(set.dual_of(i), set.pairing().dual_of(i));
            }
        }
    }

    #[test]
    fn gp_degree_p_diagonal_matches_construction() {
        // sigma_1(y) = diag(w^3, w^12, w^21) at p = 3.
        let set = build(GroupFamily::Gp, 3);
        let sigma1 = set.irrep(10);
        assert_eq!(sigma1.degree(), 3);
        let y_img = &sigma1.gen_images()[1];
        for (i, e) in [(0usize, 3u64), (1, 12), (2, 21)] {
            assert_eq!(y_img.get(i, i), set.roots().power(e));
        }
    }

    #[test]
    fn rep_matrix_examples() {
        let set = build(GroupFamily::Heis, 3);
        let g = set.group().elements()[5];
        assert!(set.rep_matrix(1, g).is_identity());

        // Central generator z = ((0,1),0) maps to eps^eta I under sigma_1.
        let z = set
            .group()
            .elements()
            .iter()
            .copied()
            .find(|e| e.coords() == [0, 1, 0])
            .unwrap();
        let img = set.rep_matrix(10, z);
        let scalar = img.as_scalar().expect("central image is scalar");
        assert_eq!(set.roots().exponent_of(scalar), Some(9));

        // x maps to the cyclic shift, trace zero.
        let x = set.group().generators()[0];
        let img = set.rep_matrix(10, x);
        assert!(img.trace().is_zero());
        assert!(img.get(0, 1).is_one());
        assert!(img.get(2, 0).is_one());
    }

    #[test]
    fn character_inner_products() {
        let set = build(GroupFamily::Heis, 3);
        assert!(set.character_inner_product(1, 1).is_one());
        assert!(set.character_inner_product(1, 10).is_zero());
        assert!(set.character_inner_product(10, 11).is_zero());
        assert!(set.character_inner_product(10, 10).is_one());
    }

    #[test]
    fn degree_squares_sum_to_group_order() {
        for family in GroupFamily::ALL {
            let set = build(family, 3);
            let sum: usize = set.irreps().iter().map(|i| i.degree() * i.degree()).sum();
            assert_eq!(sum as u64, 27);
        }
    }

    #[test]
    fn builds_verify_at_p5() {
        for family in [GroupFamily::Gp, GroupFamily::Zp2xZp] {
            let set = build(family, 5);
            assert_eq!(set.count(), family.class_count(p(5)));
        }
    }

    #[test]
    fn degree_p_irreps_are_faithful_and_trace_zero() {
        for family in [GroupFamily::Heis, GroupFamily::Gp] {
            let set = build(family, 3);
            for i in 10..=11 {
                assert!(set.is_faithful(i));
                assert!(set.trace_zero_off_center(i));
                assert!(set.center_scalar_of_order_p(i));
            }
            // Degree-1 characters factor through a proper quotient.
            assert!(!set.is_faithful(2));
        }
    }

    #[test]
    fn identity_power_law() {
        let set = build(GroupFamily::Gp, 3);
        for &g in set.group().elements().iter().step_by(5) {
            let gp3 = set.group().power(g, 27);
            for i in [1, 4, 10] {
                assert!(set.rep_matrix(i, gp3).is_identity());
            }
        }
    }

    #[test]
    fn csv_export_shape() {
        let set = build(GroupFamily::Heis, 3);
        let csv = set.character_table_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 12);
        assert!(lines[0].starts_with("irrep,degree,dual,"));
        assert!(lines[1].starts_with("rho_1,1,rho_1,1,1,"));
        // Degree-p rows start with the degree at the identity class.
        assert!(lines[10].starts_with("rho_10,3,rho_11,3,"));
    }
}
