//! Brute-force oracle for invariant bilinear forms: assemble the
//! block-diagonal representation of a multiplicity vector, solve the
//! invariance equations `C_g^t X C_g = X` exactly over the generators,
//! and recover dimension, basis, block structure and non-degenerate
//! witnesses.
//!
//! Solving over the generators suffices: `g -> C_g^t (.) C_g` is
//! multiplicative, so invariance under generators extends to the whole
//! group. Systems with assembled degree at most 8 are solved on the full
//! `n^2`-variable system; larger ones decompose into per-dual-block-pair
//! subsystems, which cuts the exact-arithmetic cost by orders of
//! magnitude (the full path stays available as a cross-check).

use std::collections::BTreeSet;

use crate::combinat::{admits_nondegenerate, MultVec};
use crate::cyclo::{CycloNum, OddPrime};
use crate::error::Error;
use crate::groups::GroupElem;
use crate::irreps::{DualPairing, IrrepSet};
use crate::matrix::{CycloMatrix, Echelon, SparseRow};

/// Degree bound up to which the full `n^2`-variable system is solved
/// directly instead of per block pair.
pub const FULL_SYSTEM_MAX_DEGREE: usize = 8;

/// One isotypic block of an assembled representation: `copies` copies of
/// irrep `irrep`, spanning `size = degree * copies` coordinates starting
/// at `offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub irrep: usize,
    pub offset: usize,
    pub size: usize,
    pub degree: usize,
    pub copies: usize,
}

/// The assembled block-diagonal generator matrices of `k_1 rho_1 + ... +
/// k_r rho_r`, in the frozen irrep order.
#[derive(Debug, Clone)]
pub struct RepAssembly {
    k: MultVec,
    n: usize,
    generator_matrices: Vec<CycloMatrix>,
    blocks: Vec<Block>,
    p: OddPrime,
}

impl RepAssembly {
    pub fn multiplicities(&self) -> &MultVec {
        &self.k
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generator_matrices(&self) -> &[CycloMatrix] {
        &self.generator_matrices
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    fn block_of_coord(&self, coord: usize) -> &Block {
        let idx = self
            .blocks
            .partition_point(|b| b.offset + b.size <= coord);
        &self.blocks[idx]
    }

    /// The sub-block of a generator matrix belonging to one isotypic
    /// block (everything off the diagonal blocks is zero).
    fn generator_block(&self, gen: usize, block: &Block) -> CycloMatrix {
        let m = &self.generator_matrices[gen];
        CycloMatrix::from_fn(self.p, block.size, block.size, |r, c| {
            m.get(block.offset + r, block.offset + c).clone()
        })
    }
}

/// Builds the block-diagonal generator images for `k`. Fails on the
/// empty representation (degree 0), whose invariant space is the zero
/// space by convention.
pub fn assemble(k: &MultVec, irreps: &IrrepSet) -> Result<RepAssembly, Error> {
    let p = irreps.group().prime();
    let degrees = k.family().degrees(p);
    let n = k.degree() as usize;
    if n == 0 {
        return Err(Error::EmptyRepresentation);
    }
    let mut blocks = Vec::new();
    let mut offset = 0usize;
    for (i, (&copies, &d)) in k.k().iter().zip(&degrees).enumerate() {
        if copies == 0 {
            continue;
        }
        let size = (copies * d) as usize;
        blocks.push(Block {
            irrep: i + 1,
            offset,
            size,
            degree: d as usize,
            copies: copies as usize,
        });
        offset += size;
    }
    debug_assert_eq!(offset, n);
    let gen_count = irreps.group().generators().len();
    let mut generator_matrices = Vec::with_capacity(gen_count);
    for g in 0..gen_count {
        let mut m = CycloMatrix::zero(p, n, n);
        for b in &blocks {
            let img = &irreps.irrep(b.irrep).gen_images()[g];
            for copy in 0..b.copies {
                let at = b.offset + copy * b.degree;
                for r in 0..b.degree {
                    for c in 0..b.degree {
                        let v = img.get(r, c);
                        if !v.is_zero() {
                            m.set(at + r, at + c, v.clone());
                        }
                    }
                }
            }
        }
        generator_matrices.push(m);
    }
    Ok(RepAssembly {
        k: k.clone(),
        n,
        generator_matrices,
        blocks,
        p,
    })
}

/// Image of an arbitrary group element under the assembled
/// representation (block diagonal of `rep_matrix` images).
pub fn assembled_image(k: &MultVec, irreps: &IrrepSet, g: GroupElem) -> CycloMatrix {
    let p = irreps.group().prime();
    let degrees = k.family().degrees(p);
    let n = k.degree() as usize;
    let mut m = CycloMatrix::zero(p, n, n);
    let mut at = 0usize;
    for (i, (&copies, &d)) in k.k().iter().zip(&degrees).enumerate() {
        if copies == 0 {
            continue;
        }
        let img = irreps.rep_matrix(i + 1, g);
        for _ in 0..copies {
            for r in 0..d as usize {
                for c in 0..d as usize {
                    let v = img.get(r, c);
                    if !v.is_zero() {
                        m.set(at + r, at + c, v.clone());
                    }
                }
            }
            at += d as usize;
        }
    }
    m
}

/// Basis and dimension of the space of invariant bilinear forms, plus
/// which isotypic blocks the basis touches.
#[derive(Debug, Clone)]
pub struct InvSpace {
    pub dimension: usize,
    pub basis: Vec<CycloMatrix>,
    pub block_support: BTreeSet<(usize, usize)>,
}

/// Which elimination route `invariant_space` takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    /// Full system for degree <= 8, block pairs above.
    Auto,
    /// Always the full `n^2`-variable system.
    FullSystem,
    /// Always the per-dual-pair block decomposition.
    BlockPairs,
}

/// Exact nullspace of the stacked operator `X -> C_g^t X C_g - X` over
/// all generators; the dimension matches `sum_{(i,j) in A_G} k_i k_j`.
pub fn invariant_space(asm: &RepAssembly) -> InvSpace {
    invariant_space_mode(asm, SolveMode::Auto)
}

pub fn invariant_space_mode(asm: &RepAssembly, mode: SolveMode) -> InvSpace {
    let full = match mode {
        SolveMode::Auto => asm.n <= FULL_SYSTEM_MAX_DEGREE,
        SolveMode::FullSystem => true,
        SolveMode::BlockPairs => false,
    };
    if full {
        invariant_space_full(asm)
    } else {
        invariant_space_blocks(asm)
    }
}

/// Sparse rows of the system `L_g^t X R_g = X` over the entries of the
/// `rows_dim x cols_dim` unknown `X`, one equation per entry per
/// generator.
fn invariance_rows(
    p: OddPrime,
    left: &[CycloMatrix],
    right: &[CycloMatrix],
    rows_dim: usize,
    cols_dim: usize,
) -> Vec<SparseRow> {
    let mut rows = Vec::with_capacity(left.len() * rows_dim * cols_dim);
    for (lm, rm) in left.iter().zip(right) {
        // Column-sparse views: entries of column alpha of L and beta of R.
        let lcols: Vec<Vec<(usize, &CycloNum)>> = (0..rows_dim)
            .map(|alpha| {
                (0..rows_dim)
                    .filter(|&u| !lm.get(u, alpha).is_zero())
                    .map(|u| (u, lm.get(u, alpha)))
                    .collect()
            })
            .collect();
        let rcols: Vec<Vec<(usize, &CycloNum)>> = (0..cols_dim)
            .map(|beta| {
                (0..cols_dim)
                    .filter(|&v| !rm.get(v, beta).is_zero())
                    .map(|v| (v, rm.get(v, beta)))
                    .collect()
            })
            .collect();
        for (alpha, lcol) in lcols.iter().enumerate() {
            for (beta, rcol) in rcols.iter().enumerate() {
                let mut terms = Vec::with_capacity(lcol.len() * rcol.len() + 1);
                for &(u, lv) in lcol {
                    for &(v, rv) in rcol {
                        terms.push((u * cols_dim + v, lv.mul(rv)));
                    }
                }
                terms.push((
                    alpha * cols_dim + beta,
                    CycloNum::one(p).neg(),
                ));
                let row = SparseRow::new(terms);
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

fn invariant_space_full(asm: &RepAssembly) -> InvSpace {
    let n = asm.n;
    let rows = invariance_rows(
        asm.p,
        &asm.generator_matrices,
        &asm.generator_matrices,
        n,
        n,
    );
    let ech = Echelon::new(asm.p, n * n, rows);
    let basis: Vec<CycloMatrix> = ech
        .nullspace_basis()
        .into_iter()
        .map(|v| CycloMatrix::from_fn(asm.p, n, n, |r, c| v[r * n + c].clone()))
        .collect();
    let block_support = support_of(asm, &basis);
    InvSpace {
        dimension: basis.len(),
        basis,
        block_support,
    }
}

fn invariant_space_blocks(asm: &RepAssembly) -> InvSpace {
    let n = asm.n;
    let r = asm.k.family().class_count(asm.p);
    let pairing = DualPairing::structural(r);
    let mut basis = Vec::new();
    for lb in asm.blocks() {
        let j = pairing.dual_of(lb.irrep);
        let Some(rb) = asm.blocks().iter().find(|b| b.irrep == j) else {
            continue;
        };
        let left: Vec<CycloMatrix> = (0..asm.generator_matrices.len())
            .map(|g| asm.generator_block(g, lb))
            .collect();
        let right: Vec<CycloMatrix> = (0..asm.generator_matrices.len())
            .map(|g| asm.generator_block(g, rb))
            .collect();
        let rows = invariance_rows(asm.p, &left, &right, lb.size, rb.size);
        let ech = Echelon::new(asm.p, lb.size * rb.size, rows);
        for v in ech.nullspace_basis() {
            basis.push(CycloMatrix::from_fn(asm.p, n, n, |row, col| {
                if (lb.offset..lb.offset + lb.size).contains(&row)
                    && (rb.offset..rb.offset + rb.size).contains(&col)
                {
                    v[(row - lb.offset) * rb.size + (col - rb.offset)].clone()
                } else {
                    CycloNum::zero(asm.p)
                }
            }));
        }
    }
    let block_support = support_of(asm, &basis);
    InvSpace {
        dimension: basis.len(),
        basis,
        block_support,
    }
}

fn support_of(asm: &RepAssembly, basis: &[CycloMatrix]) -> BTreeSet<(usize, usize)> {
    let mut support = BTreeSet::new();
    for m in basis {
        for r in 0..asm.n {
            for c in 0..asm.n {
                if !m.get(r, c).is_zero() {
                    support.insert((
                        asm.block_of_coord(r).irrep,
                        asm.block_of_coord(c).irrep,
                    ));
                }
            }
        }
    }
    support
}

/// True when `C_g^t m C_g = m` for every assembled generator.
pub fn is_invariant(asm: &RepAssembly, m: &CycloMatrix) -> bool {
    asm.generator_matrices
        .iter()
        .all(|c| c.transpose().mul(m).mul(c) == *m)
}

/// Exact rank of a matrix over the cyclotomic field.
pub fn rank(m: &CycloMatrix) -> usize {
    m.rank()
}

/// Dimension of the symmetric part of the computed space: the rank of
/// `{B + B^t}` over the basis.
pub fn symmetric_rank(space: &InvSpace, p: OddPrime) -> usize {
    transpose_part_rank(space, p, false)
}

/// Dimension of the skew-symmetric part: the rank of `{B - B^t}`.
pub fn skew_rank(space: &InvSpace, p: OddPrime) -> usize {
    transpose_part_rank(space, p, true)
}

fn transpose_part_rank(space: &InvSpace, p: OddPrime, skew: bool) -> usize {
    let rows: Vec<SparseRow> = space
        .basis
        .iter()
        .map(|b| {
            let bt = b.transpose();
            let m = if skew { b.sub(&bt) } else { b.add(&bt) };
            let n = m.rows();
            SparseRow::new(
                (0..n * n)
                    .map(|i| (i, m.get(i / n, i % n).clone()))
                    .collect(),
            )
        })
        .collect();
    let nvars = space
        .basis
        .first()
        .map(|b| b.rows() * b.cols())
        .unwrap_or(0);
    Echelon::new(p, nvars, rows).rank()
}

/// The anti-diagonal `d x d` unit matrix.
fn anti_diagonal(p: OddPrime, d: usize) -> CycloMatrix {
    CycloMatrix::from_fn(p, d, d, |r, c| {
        if r + c == d - 1 {
            CycloNum::one(p)
        } else {
            CycloNum::zero(p)
        }
    })
}

/// Constructs a non-degenerate invariant form when one exists: identity
/// on the trivial isotypic block and, per dual pair with matched
/// multiplicity `m`, paired blocks `I_m (x) L` (with `L = [1]` in degree
/// one and the anti-diagonal in degree `p`). Returns `None` exactly when
/// some dual pair has unequal multiplicities. The constructed matrix is
/// verified invariant and of full rank before it is returned; a failure
/// there signals an irrep construction bug, not bad input.
pub fn nondegenerate_witness(
    k: &MultVec,
    irreps: &IrrepSet,
) -> Result<Option<CycloMatrix>, Error> {
    let p = irreps.group().prime();
    if !admits_nondegenerate(k) {
        return Ok(None);
    }
    let n = k.degree() as usize;
    if n == 0 {
        return Ok(Some(CycloMatrix::zero(p, 0, 0)));
    }
    let asm = assemble(k, irreps)?;
    let mut x = CycloMatrix::zero(p, n, n);
    let blocks = asm.blocks();
    for b in blocks {
        if b.irrep == 1 {
            for i in 0..b.size {
                x.set(b.offset + i, b.offset + i, CycloNum::one(p));
            }
            continue;
        }
        // Handle each dual pair once, from its even (first) index.
        if b.irrep % 2 == 1 {
            continue;
        }
        let partner = blocks
            .iter()
            .find(|c| c.irrep == b.irrep + 1)
            .expect("matched multiplicities");
        let l = anti_diagonal(p, b.degree);
        for copy in 0..b.copies {
            let (ro, co) = (b.offset + copy * b.degree, partner.offset + copy * b.degree);
            for r in 0..b.degree {
                for c in 0..b.degree {
                    let v = l.get(r, c);
                    if !v.is_zero() {
                        x.set(ro + r, co + c, v.clone());
                        x.set(co + c, ro + r, v.clone());
                    }
                }
            }
        }
    }
    if !is_invariant(&asm, &x) {
        return Err(Error::Verification {
            index: 0,
            check: "constructed witness is not invariant".into(),
        });
    }
    if x.rank() != n {
        return Err(Error::Verification {
            index: 0,
            check: "constructed witness is singular".into(),
        });
    }
    Ok(Some(x))
}

/// The characteristic-`p` degenerate regime: every representation is
/// trivial there, so every `n x n` matrix is an invariant form. Reports
/// dimension `n^2` with the full matrix-unit basis (the coefficient
/// entries are plain 0/1 values; the ambient field is immaterial).
pub fn charp_mode(n: usize) -> InvSpace {
    let p = OddPrime::new(3).expect("3 is prime");
    let mut basis = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let mut m = CycloMatrix::zero(p, n, n);
            m.set(r, c, CycloNum::one(p));
            basis.push(m);
        }
    }
    let mut block_support = BTreeSet::new();
    if n > 0 {
        block_support.insert((1, 1));
    }
    InvSpace {
        dimension: n * n,
        basis,
        block_support,
    }
}
