//! Finite-dimensional algebras presented by quivers and admissible relations.
//!
//! The basis is computed degree by degree: paths of length `l` are taken
//! modulo the degree-`l` component of the two-sided ideal. With the previous
//! degrees already reduced, that component is spanned by `b . r` for basis
//! paths `b` and relations `r` (right multiples of lower-degree ideal
//! elements die under the prefix rewrite), so each degree is one small exact
//! elimination. Construction stops at the first degree contributing no basis
//! paths; every longer path is then zero in the quotient.
//!
//! Conventions, fixed globally: paths compose left to right (`xy` means `x`
//! then `y`), and a homomorphism `e_iA -> e_jA` of right modules is left
//! multiplication by an element of `e_jAe_i`.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::mat::{Eliminator, Mat};
use crate::quiver::{Path, Quiver, Relation};
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

pub type SparseVec = Vec<(usize, Scalar)>;

/// A basis vector of the algebra: a surviving path, or (in a trivial
/// extension) the dual of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Path(Path),
    /// Dual basis vector of the path with the given basis index in the
    /// underlying algebra.
    Dual(usize),
}

#[derive(Clone, Debug)]
pub struct BasisElem {
    pub kind: BasisKind,
    pub from: usize,
    pub to: usize,
    /// Path length for paths; for duals, a formal grade above every path.
    pub degree: usize,
}

/// An element written in the algebra basis (dense coefficient vector).
#[derive(Clone, Debug, PartialEq)]
pub struct AlgElem(pub Vec<Scalar>);

#[derive(Debug)]
pub struct Algebra {
    pub id: u64,
    pub field: Field,
    pub vertex_count: usize,
    pub quiver: Option<Quiver>,
    pub relations: Vec<Relation>,
    pub basis: Vec<BasisElem>,
    pub dim: usize,
    /// Basis index of `e_v`, for `v` in `1..=n` (slot `v-1`).
    pub idempotents: Vec<usize>,
    /// `pair_basis[i-1][j-1]` = basis indices spanning `e_iAe_j`.
    pub pair_basis: Vec<Vec<Vec<usize>>>,
    /// Largest path length occurring in the basis.
    pub max_degree: usize,
    mult: Vec<Vec<SparseVec>>,
    /// Reduction of `(basis path, arrow)` extensions into the basis.
    reduce_pair: HashMap<(usize, usize), SparseVec>,
    path_index: HashMap<Path, usize>,
}

fn sparse_add_scaled(acc: &mut HashMap<usize, Scalar>, v: &SparseVec, c: &Scalar) {
    for (i, x) in v {
        let val = x.mul(c);
        match acc.entry(*i) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&val);
                if s.is_zero() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                if !val.is_zero() {
                    e.insert(val);
                }
            }
        }
    }
}

fn sparse_from_map(m: HashMap<usize, Scalar>) -> SparseVec {
    let mut v: SparseVec = m.into_iter().collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

impl Algebra {
    /// Build the quotient of the path algebra of `q` by the admissible ideal
    /// generated by `rels`, computing bases degree by degree up to
    /// `length_cap`.
    pub fn build(q: Quiver, rels: Vec<Relation>, length_cap: usize, field: Field) -> Result<Algebra> {
        if length_cap < 1 {
            return Err(Error::NonAdmissible("length_cap must be at least 1".into()));
        }
        for r in &rels {
            for (c, _) in &r.terms {
                if c.field() != field {
                    return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
                }
            }
        }
        let n = q.vertex_count;
        let mut basis: Vec<BasisElem> = Vec::new();
        let mut path_index: HashMap<Path, usize> = HashMap::new();
        let mut idempotents = Vec::new();
        for v in 1..=n {
            let p = Path::idempotent(v);
            idempotents.push(basis.len());
            path_index.insert(p.clone(), basis.len());
            basis.push(BasisElem { kind: BasisKind::Path(p), from: v, to: v, degree: 0 });
        }
        let mut reduce_pair: HashMap<(usize, usize), SparseVec> = HashMap::new();
        // basis indices of the previous degree
        let mut prev: Vec<usize> = idempotents.clone();
        let mut degree = 0usize;
        while !prev.is_empty() {
            let ell = degree + 1;
            if ell > length_cap {
                return Err(Error::NotFiniteDimensional { cap: length_cap });
            }
            // columns: composable (basis path of degree `degree`, arrow)
            let mut cols: Vec<(usize, usize)> = Vec::new();
            for &b in &prev {
                let to = basis[b].to;
                for a in q.arrows.iter().filter(|a| a.from == to) {
                    cols.push((b, a.id));
                }
            }
            if cols.is_empty() {
                break;
            }
            let col_pos: HashMap<(usize, usize), usize> =
                cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            // rows: basis path times relation, prefix-rewritten into columns
            let mut elim = Eliminator::new(field, cols.len());
            for r in &rels {
                let ld = r.degree();
                if ld > ell {
                    continue;
                }
                let left_deg = ell - ld;
                let lefts: Vec<usize> = basis
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| {
                        b.degree == left_deg && matches!(b.kind, BasisKind::Path(_))
                    })
                    .map(|(i, _)| i)
                    .collect();
                for bi in lefts {
                    let BasisKind::Path(bp) = &basis[bi].kind else { unreachable!() };
                    if bp.to(&q) != r.terms[0].1.from {
                        continue;
                    }
                    let mut row = vec![field.zero(); cols.len()];
                    let mut nonzero = false;
                    for (c, term) in &r.terms {
                        let full = bp.concat(term, &q).expect("parallel relation terms");
                        let last = *full.arrows.last().expect("degree >= 2");
                        let prefix =
                            Path { from: full.from, arrows: full.arrows[..ell - 1].to_vec() };
                        let red = reduce_word_with(
                            &q,
                            &basis,
                            &path_index,
                            &reduce_pair,
                            &prefix,
                            field,
                        );
                        for (qi, qc) in red {
                            let j = *col_pos
                                .get(&(qi, last))
                                .expect("composable extension column");
                            row[j] = row[j].add(&qc.mul(c));
                            nonzero = true;
                        }
                    }
                    if nonzero {
                        elim.insert(&row);
                    }
                }
            }
            // free columns become basis paths; pivot columns get reductions
            let (rref, pivots) = elim_to_rref(&elim, field, cols.len());
            let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
            let mut new_basis = Vec::new();
            let mut col_target: Vec<SparseVec> = vec![Vec::new(); cols.len()];
            for (j, &(b, a)) in cols.iter().enumerate() {
                if pivot_set.contains(&j) {
                    continue;
                }
                let BasisKind::Path(bp) = &basis[b].kind else { unreachable!() };
                let full = Path { from: bp.from, arrows: { let mut v = bp.arrows.clone(); v.push(a); v } };
                let to = full.to(&q);
                let idx = basis.len();
                path_index.insert(full.clone(), idx);
                basis.push(BasisElem { kind: BasisKind::Path(full), from: bp.from, to, degree: ell });
                col_target[j] = vec![(idx, field.one())];
                new_basis.push(idx);
            }
            for (pi, &pj) in pivots.iter().enumerate() {
                let mut red = Vec::new();
                for j in 0..cols.len() {
                    if j != pj && !rref.get(pi, j).is_zero() {
                        debug_assert!(!pivot_set.contains(&j));
                        let (idx, _) = col_target[j][0].clone();
                        red.push((idx, rref.get(pi, j).neg()));
                    }
                }
                red.sort_by_key(|(i, _)| *i);
                col_target[pj] = red;
            }
            for (j, &(b, a)) in cols.iter().enumerate() {
                reduce_pair.insert((b, a), col_target[j].clone());
            }
            prev = new_basis;
            degree = ell;
            if prev.is_empty() {
                break;
            }
            if ell == length_cap {
                return Err(Error::NotFiniteDimensional { cap: length_cap });
            }
        }
        let max_degree = basis.iter().map(|b| b.degree).max().unwrap_or(0);
        let dim = basis.len();
        let mut pair_basis = vec![vec![Vec::new(); n]; n];
        for (i, b) in basis.iter().enumerate() {
            pair_basis[b.from - 1][b.to - 1].push(i);
        }
        let mut alg = Algebra {
            id: NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed),
            field,
            vertex_count: n,
            quiver: Some(q),
            relations: rels,
            basis,
            dim,
            idempotents,
            pair_basis,
            max_degree,
            mult: Vec::new(),
            reduce_pair,
            path_index,
        };
        alg.fill_mult_table()?;
        alg.validate()?;
        Ok(alg)
    }

    fn fill_mult_table(&mut self) -> Result<()> {
        let q = self.quiver.as_ref().expect("presented algebra");
        let mut table = vec![vec![Vec::new(); self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let (BasisKind::Path(p), BasisKind::Path(r)) =
                    (&self.basis[i].kind, &self.basis[j].kind)
                else {
                    unreachable!()
                };
                if self.basis[i].to != self.basis[j].from {
                    continue;
                }
                if self.basis[i].degree + self.basis[j].degree > self.max_degree {
                    continue;
                }
                let full = p.concat(r, q).expect("checked endpoints");
                table[i][j] = self.reduce_word(&full);
            }
        }
        self.mult = table;
        Ok(())
    }

    /// Reduce an arbitrary raw path to basis coordinates.
    pub fn reduce_word(&self, p: &Path) -> SparseVec {
        reduce_word_with(
            self.quiver.as_ref().expect("presented algebra"),
            &self.basis,
            &self.path_index,
            &self.reduce_pair,
            p,
            self.field,
        )
    }

    /// Construct an algebra directly from a basis and multiplication table
    /// (used by the trivial extension).
    pub fn from_table(
        field: Field,
        vertex_count: usize,
        basis: Vec<BasisElem>,
        idempotents: Vec<usize>,
        mult: Vec<Vec<SparseVec>>,
    ) -> Result<Algebra> {
        let dim = basis.len();
        let max_degree = basis.iter().map(|b| b.degree).max().unwrap_or(0);
        let mut pair_basis = vec![vec![Vec::new(); vertex_count]; vertex_count];
        for (i, b) in basis.iter().enumerate() {
            pair_basis[b.from - 1][b.to - 1].push(i);
        }
        let alg = Algebra {
            id: NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed),
            field,
            vertex_count,
            quiver: None,
            relations: Vec::new(),
            basis,
            dim,
            idempotents,
            pair_basis,
            max_degree,
            mult,
            reduce_pair: HashMap::new(),
            path_index: HashMap::new(),
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let pair_total: usize =
            self.pair_basis.iter().flatten().map(|v| v.len()).sum();
        if pair_total != self.dim {
            return Err(Error::Internal("vertex pair spaces do not sum to the dimension".into()));
        }
        // e_i orthogonal idempotents summing to 1
        for (vi, &i) in self.idempotents.iter().enumerate() {
            for (vj, &j) in self.idempotents.iter().enumerate() {
                let prod = &self.mult[i][j];
                if vi == vj {
                    if prod.len() != 1 || prod[0].0 != i || !prod[0].1.is_one() {
                        return Err(Error::Internal("e_i not idempotent".into()));
                    }
                } else if !prod.is_empty() {
                    return Err(Error::Internal("idempotents not orthogonal".into()));
                }
            }
        }
        // associativity, full below a size cutoff and sampled above it
        let full = self.dim <= 40;
        let check = |i: usize, j: usize, k: usize| -> Result<()> {
            let ab = self.mult_basis(i, j);
            let bc = self.mult_basis(j, k);
            let left = self.mult_sparse_basis(&ab, k);
            let right = self.mult_basis_sparse(i, &bc);
            if left != right {
                return Err(Error::Internal(format!("associativity fails at ({i},{j},{k})")));
            }
            Ok(())
        };
        if full {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    for k in 0..self.dim {
                        check(i, j, k)?;
                    }
                }
            }
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5117);
            for _ in 0..5000 {
                let i = rng.gen_range(0..self.dim);
                let j = rng.gen_range(0..self.dim);
                let k = rng.gen_range(0..self.dim);
                check(i, j, k)?;
            }
        }
        Ok(())
    }

    pub fn mult_basis(&self, i: usize, j: usize) -> SparseVec {
        self.mult[i][j].clone()
    }

    fn mult_sparse_basis(&self, a: &SparseVec, k: usize) -> SparseVec {
        let mut acc = HashMap::new();
        for (i, c) in a {
            sparse_add_scaled(&mut acc, &self.mult[*i][k], c);
        }
        sparse_from_map(acc)
    }

    fn mult_basis_sparse(&self, i: usize, b: &SparseVec) -> SparseVec {
        let mut acc = HashMap::new();
        for (j, c) in b {
            sparse_add_scaled(&mut acc, &self.mult[i][*j], c);
        }
        sparse_from_map(acc)
    }

    pub fn zero_elem(&self) -> AlgElem {
        AlgElem(vec![self.field.zero(); self.dim])
    }

    pub fn basis_elem(&self, i: usize) -> AlgElem {
        let mut e = self.zero_elem();
        e.0[i] = self.field.one();
        e
    }

    pub fn idempotent_elem(&self, v: usize) -> AlgElem {
        self.basis_elem(self.idempotents[v - 1])
    }

    pub fn unit(&self) -> AlgElem {
        let mut e = self.zero_elem();
        for &i in &self.idempotents {
            e.0[i] = self.field.one();
        }
        e
    }

    pub fn elem_from_path(&self, p: &Path) -> AlgElem {
        let mut e = self.zero_elem();
        for (i, c) in self.reduce_word(p) {
            e.0[i] = c;
        }
        e
    }

    /// Bilinear product via the structure constants.
    pub fn multiply(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let mut acc: HashMap<usize, Scalar> = HashMap::new();
        for (i, ca) in a.0.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.0.iter().enumerate() {
                if cb.is_zero() || self.mult[i][j].is_empty() {
                    continue;
                }
                let c = ca.mul(cb);
                sparse_add_scaled(&mut acc, &self.mult[i][j], &c);
            }
        }
        let mut out = self.zero_elem();
        for (i, c) in acc {
            out.0[i] = c;
        }
        out
    }

    pub fn add_elems(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        AlgElem(a.0.iter().zip(&b.0).map(|(x, y)| x.add(y)).collect())
    }

    pub fn scale_elem(&self, c: &Scalar, a: &AlgElem) -> AlgElem {
        AlgElem(a.0.iter().map(|x| x.mul(c)).collect())
    }

    pub fn neg_elem(&self, a: &AlgElem) -> AlgElem {
        AlgElem(a.0.iter().map(|x| x.neg()).collect())
    }

    pub fn elem_is_zero(&self, a: &AlgElem) -> bool {
        a.0.iter().all(|x| x.is_zero())
    }

    /// Zero coefficient on every idempotent, i.e. membership in the radical.
    pub fn elem_in_radical(&self, a: &AlgElem) -> bool {
        self.idempotents.iter().all(|&i| a.0[i].is_zero())
    }

    /// Coefficient of `e_v` in `a`.
    pub fn idempotent_coeff(&self, a: &AlgElem, v: usize) -> Scalar {
        a.0[self.idempotents[v - 1]].clone()
    }

    /// Inverse of `a` inside `e_vAe_v`, when the `e_v` coefficient is nonzero.
    /// `a` must lie in `e_vAe_v`.
    pub fn local_inverse(&self, a: &AlgElem, v: usize) -> Option<AlgElem> {
        let idxs = &self.pair_basis[v - 1][v - 1];
        // left multiplication by a on e_vAe_v; column c = coords of a*b_c
        let m = Mat::from_fn(self.field, idxs.len(), idxs.len(), |r, c| {
            let prod = self.multiply(a, &self.basis_elem(idxs[c]));
            prod.0[idxs[r]].clone()
        });
        let target: Vec<Scalar> = idxs
            .iter()
            .map(|&i| if i == self.idempotents[v - 1] { self.field.one() } else { self.field.zero() })
            .collect();
        let sol = m.solve(&target).ok()??;
        let mut out = self.zero_elem();
        for (k, &i) in idxs.iter().enumerate() {
            out.0[i] = sol[k].clone();
        }
        Some(out)
    }

    pub fn display_elem(&self, a: &AlgElem) -> String {
        let mut parts = Vec::new();
        for (i, c) in a.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = self.basis_name(i);
            if c.is_one() {
                parts.push(name);
            } else {
                parts.push(format!("{c}*{name}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn basis_name(&self, i: usize) -> String {
        match &self.basis[i].kind {
            BasisKind::Path(p) => match &self.quiver {
                Some(q) => p.label_word(q),
                None => format!("b{i}"),
            },
            BasisKind::Dual(j) => format!("{}*", self.basis_name(*j)),
        }
    }
}

fn elim_to_rref(elim: &Eliminator, field: Field, dim: usize) -> (Mat, Vec<usize>) {
    // Recover the reduced rows of the eliminator as a matrix. The eliminator
    // keeps rows fully reduced and ordered by pivot, which is exactly RREF.
    let mut rows = Vec::new();
    let mut pivots = Vec::new();
    for j in 0..dim {
        let mut unit = vec![field.zero(); dim];
        unit[j] = field.one();
        let red = elim.reduce(&unit);
        // j is a pivot column iff reduce(e_j) kills the j-th coordinate
        if red[j].is_zero() {
            // the corresponding reduced row is e_j - reduce(e_j)
            let mut row = vec![field.zero(); dim];
            row[j] = field.one();
            for (k, item) in red.iter().enumerate() {
                if k != j {
                    row[k] = item.neg();
                }
            }
            rows.push(row);
            pivots.push(j);
        }
    }
    (Mat::from_rows(field, rows).unwrap_or_else(|_| Mat::zero(field, 0, dim)), pivots)
}

fn reduce_word_with(
    q: &Quiver,
    basis: &[BasisElem],
    path_index: &HashMap<Path, usize>,
    reduce_pair: &HashMap<(usize, usize), SparseVec>,
    p: &Path,
    field: Field,
) -> SparseVec {
    if let Some(&i) = path_index.get(p) {
        return vec![(i, field.one())];
    }
    let start = Path::idempotent(p.from);
    let mut acc: SparseVec = vec![(
        *path_index.get(&start).expect("idempotent basis path"),
        field.one(),
    )];
    for &a in &p.arrows {
        let mut next: HashMap<usize, Scalar> = HashMap::new();
        for (b, c) in &acc {
            debug_assert_eq!(basis[*b].to, q.arrow(a).from);
            if let Some(red) = reduce_pair.get(&(*b, a)) {
                sparse_add_scaled(&mut next, red, c);
            }
            // missing entry means the extension column never existed, i.e.
            // the degree died; contribution is zero
        }
        acc = sparse_from_map(next);
        if acc.is_empty() {
            return acc;
        }
    }
    acc
}

/// An algebra automorphism given by its action on the basis. For presented
/// algebras it is induced by an endpoint-preserving arrow permutation.
#[derive(Clone, Debug)]
pub struct AlgebraAutomorphism {
    pub algebra_id: u64,
    pub arrow_map: Option<Vec<usize>>,
    pub subst: Mat,
}

impl AlgebraAutomorphism {
    pub fn identity(a: &Algebra) -> AlgebraAutomorphism {
        AlgebraAutomorphism {
            algebra_id: a.id,
            arrow_map: a.quiver.as_ref().map(|q| (0..q.arrows.len()).collect()),
            subst: Mat::identity(a.field, a.dim),
        }
    }

    /// Build the automorphism induced by `arrow_map` (old arrow id -> new
    /// arrow id), verifying that endpoints are preserved, the images of the
    /// relations vanish in the quotient, and the induced linear map is an
    /// invertible algebra homomorphism.
    pub fn from_arrows(a: &Algebra, arrow_map: &[usize]) -> Result<AlgebraAutomorphism> {
        let q = a.quiver.as_ref().ok_or(Error::NoPresentation)?;
        if arrow_map.len() != q.arrows.len() {
            return Err(Error::IndexOutOfRange("arrow map has wrong length".into()));
        }
        let mut seen = vec![false; q.arrows.len()];
        for (i, &j) in arrow_map.iter().enumerate() {
            if j >= q.arrows.len() || seen[j] {
                return Err(Error::IndexOutOfRange("arrow map is not a bijection".into()));
            }
            seen[j] = true;
            let (src, dst) = (q.arrow(i), q.arrow(j));
            if src.from != dst.from || src.to != dst.to {
                return Err(Error::NonVertexFixing);
            }
        }
        // image of each relation must reduce to zero
        for r in &a.relations {
            let mut acc: HashMap<usize, Scalar> = HashMap::new();
            for (c, p) in &r.terms {
                let mapped = Path {
                    from: p.from,
                    arrows: p.arrows.iter().map(|&x| arrow_map[x]).collect(),
                };
                sparse_add_scaled(&mut acc, &a.reduce_word(&mapped), c);
            }
            if !acc.is_empty() {
                return Err(Error::RelationNotPreserved(format!(
                    "relation of degree {} maps to a nonzero element",
                    r.degree()
                )));
            }
        }
        let mut subst = Mat::zero(a.field, a.dim, a.dim);
        for (j, b) in a.basis.iter().enumerate() {
            let BasisKind::Path(p) = &b.kind else {
                return Err(Error::NoPresentation);
            };
            let mapped =
                Path { from: p.from, arrows: p.arrows.iter().map(|&x| arrow_map[x]).collect() };
            for (i, c) in a.reduce_word(&mapped) {
                subst.set(i, j, c);
            }
        }
        let auto = AlgebraAutomorphism {
            algebra_id: a.id,
            arrow_map: Some(arrow_map.to_vec()),
            subst,
        };
        auto.verify(a)?;
        Ok(auto)
    }

    /// Check invertibility and multiplicativity on basis pairs.
    pub fn verify(&self, a: &Algebra) -> Result<()> {
        if !self.subst.is_invertible()? {
            return Err(Error::Internal("automorphism substitution is singular".into()));
        }
        let full = a.dim <= 40;
        let check = |i: usize, j: usize| -> Result<()> {
            let si = self.apply(a, &a.basis_elem(i));
            let sj = self.apply(a, &a.basis_elem(j));
            let lhs = self.apply(a, &a.multiply(&a.basis_elem(i), &a.basis_elem(j)));
            let rhs = a.multiply(&si, &sj);
            if lhs != rhs {
                return Err(Error::Internal(format!("sigma(ab) != sigma(a)sigma(b) at ({i},{j})")));
            }
            Ok(())
        };
        if full {
            for i in 0..a.dim {
                for j in 0..a.dim {
                    check(i, j)?;
                }
            }
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xa0a0);
            for _ in 0..4000 {
                check(rng.gen_range(0..a.dim), rng.gen_range(0..a.dim))?;
            }
        }
        // idempotents fixed
        for v in 1..=a.vertex_count {
            if self.apply(a, &a.idempotent_elem(v)) != a.idempotent_elem(v) {
                return Err(Error::NonVertexFixing);
            }
        }
        Ok(())
    }

    pub fn apply(&self, a: &Algebra, x: &AlgElem) -> AlgElem {
        debug_assert_eq!(self.algebra_id, a.id);
        AlgElem(self.subst.mul_vec(&x.0))
    }

    pub fn compose(&self, other: &AlgebraAutomorphism) -> AlgebraAutomorphism {
        // (self . other)(x) = self(other(x))
        AlgebraAutomorphism {
            algebra_id: self.algebra_id,
            arrow_map: match (&self.arrow_map, &other.arrow_map) {
                (Some(f), Some(g)) => Some(g.iter().map(|&i| f[i]).collect()),
                _ => None,
            },
            subst: self.subst.mul(&other.subst),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.subst == Mat::identity(self.subst.field, self.subst.rows)
    }

    /// Image of an arrow under the permutation (presented algebras only).
    pub fn map_arrow(&self, id: usize) -> usize {
        self.arrow_map.as_ref().expect("arrow-induced automorphism")[id]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    /// Oracle: alternating words in x, y of length `l` starting at vertex
    /// `v` inside the A_n quiver (no xx or yy factor, paths fit in 1..=n).
    fn count_alternating(n: usize, v: usize, l: usize) -> usize {
        if v + l > n {
            return 0;
        }
        if l == 0 {
            return 1;
        }
        2 // one word starting with x, one with y, each alternating
    }

    fn oracle_dim_an(n: usize) -> usize {
        (1..=n)
            .map(|v| (0..n).map(|l| count_alternating(n, v, l)).sum::<usize>())
            .sum()
    }

    #[test]
    fn a4_basis_and_dimension() {
        let a = families::build_a_n(4, Field::Q).unwrap();
        assert_eq!(a.dim, 16);
        assert_eq!(a.dim, oracle_dim_an(4));
        // dim e_iA = 1 + 2(n - i)
        for i in 1..=4 {
            let d: usize = (1..=4).map(|j| a.pair_basis[i - 1][j - 1].len()).sum();
            assert_eq!(d, 1 + 2 * (4 - i));
        }
        // basis of e_1A: e1, x, y, xy, yx, xyx, yxy
        let q = a.quiver.as_ref().unwrap();
        let words: Vec<String> = a
            .basis
            .iter()
            .filter(|b| b.from == 1)
            .map(|b| match &b.kind {
                BasisKind::Path(p) => p.label_word(q),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(words, vec!["e1", "x", "y", "xy", "yx", "xyx", "yxy"]);
    }

    #[test]
    fn dim_an_matches_oracle_for_small_n() {
        for n in 2..=6 {
            let a = families::build_a_n(n, Field::Q).unwrap();
            assert_eq!(a.dim, n * n);
            assert_eq!(a.dim, oracle_dim_an(n));
        }
    }

    #[test]
    fn kronecker_dimension() {
        let a = families::build_kronecker(Field::Q).unwrap();
        assert_eq!(a.dim, 4);
    }

    #[test]
    fn free_loop_is_infinite_dimensional() {
        let q = Quiver::new(1, vec![("x".into(), 1, 1)]).unwrap();
        let err = Algebra::build(q, vec![], 10, Field::Q);
        assert!(matches!(err, Err(Error::NotFiniteDimensional { cap: 10 })));
    }

    #[test]
    fn a4_products() {
        let a = families::build_a_n(4, Field::Q).unwrap();
        let q = a.quiver.as_ref().unwrap();
        let e1 = a.idempotent_elem(1);
        let x = a.elem_from_path(&q.path_from_word(1, &["x"]).unwrap());
        let y = a.elem_from_path(&q.path_from_word(1, &["y"]).unwrap());
        // e_1 x = x
        assert_eq!(a.multiply(&e1, &x), x);
        // x . x = 0 (the relation), with the second x starting at vertex 2
        let x2 = a.elem_from_path(&q.path_from_word(2, &["x"]).unwrap());
        assert!(a.elem_is_zero(&a.multiply(&x, &x2)));
        // x . y = path xy, a basis path
        let y2 = a.elem_from_path(&q.path_from_word(2, &["y"]).unwrap());
        let xy = a.elem_from_path(&q.path_from_word(1, &["x", "y"]).unwrap());
        assert_eq!(a.multiply(&x, &y2), xy);
        let _ = y;
    }

    #[test]
    fn swap_automorphism_squares_to_identity() {
        let a = families::build_a_n(4, Field::Q).unwrap();
        let eps = families::swap_xy_automorphism(&a).unwrap();
        let sq = eps.compose(&eps);
        assert!(sq.is_identity());
        for v in 1..=4 {
            assert_eq!(eps.apply(&a, &a.idempotent_elem(v)), a.idempotent_elem(v));
        }
        let id = AlgebraAutomorphism::identity(&a);
        assert!(id.is_identity());
    }

    #[test]
    fn invalid_arrow_maps_rejected() {
        let a = families::build_a_n(2, Field::Q).unwrap();
        // swapping x:1->2 with itself twice is not a bijection
        assert!(AlgebraAutomorphism::from_arrows(&a, &[0, 0]).is_err());
    }

    #[test]
    fn relation_preservation_enforced() {
        // quiver with x^2 = 0 but only for one of the two parallel arrows:
        // swapping x and y then fails to preserve the ideal
        let q = Quiver::new(
            3,
            vec![
                ("x".into(), 1, 2),
                ("y".into(), 1, 2),
                ("x".into(), 2, 3),
                ("y".into(), 2, 3),
            ],
        )
        .unwrap();
        let one = Field::Q.one();
        let xx = q.path_from_word(1, &["x", "x"]).unwrap();
        let rels = vec![Relation::new(&q, vec![(one, xx)]).unwrap()];
        let a = Algebra::build(q, rels, 8, Field::Q).unwrap();
        // swap x <-> y at both positions; image of x^2 is y^2 != 0
        let err = AlgebraAutomorphism::from_arrows(&a, &[1, 0, 3, 2]);
        assert!(matches!(err, Err(Error::RelationNotPreserved(_))));
    }
}
