//! Hom spaces in the homotopy category of projectives.
//!
//! Chain maps are the kernel of an exact linear system; null-homotopic maps
//! are the image of `h -> dh + hd`. A `HomotopyHomSpace` carries basis
//! representatives of the quotient together with enough bookkeeping to write
//! the class of any chain map in that basis, which is what composition
//! (endomorphism algebras, approximation certificates) needs.
//!
//! Homs vanish automatically outside the shift window given by the degree
//! spans: a chain map needs a degree where both complexes are nonzero, and
//! for bounded complexes of projectives there is nothing beyond that window.

use crate::algebra::Algebra;
use crate::complex::{AlgMat, ChainMap, ProjComplex};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::mat::{Eliminator, Mat};
use std::collections::BTreeMap;
use std::ops::RangeInclusive;

/// Coordinate layout for degreewise maps `X -> Y` with a fixed degree offset
/// (`off = 0` for chain maps, `off = -1` for homotopies `X^k -> Y^{k-1}`).
#[derive(Clone, Debug)]
struct Layout {
    /// (degree k, target summand i, source summand j, pair basis indices)
    slots: Vec<(i32, usize, usize, Vec<usize>)>,
    offsets: Vec<usize>,
    total: usize,
    index: BTreeMap<(i32, usize, usize), usize>,
}

fn layout(x: &ProjComplex, y: &ProjComplex, off: i32) -> Layout {
    let a = &x.algebra;
    let mut slots = Vec::new();
    let mut index = BTreeMap::new();
    if !x.is_zero() && !y.is_zero() {
        for k in x.lo..=x.hi() {
            let src = x.term(k);
            let dst = y.term(k + off);
            for (i, &w) in dst.iter().enumerate() {
                for (j, &v) in src.iter().enumerate() {
                    let pairs = a.pair_basis[w - 1][v - 1].clone();
                    if !pairs.is_empty() {
                        index.insert((k, i, j), slots.len());
                        slots.push((k, i, j, pairs));
                    }
                }
            }
        }
    }
    let mut offsets = vec![0usize];
    for s in &slots {
        offsets.push(offsets.last().unwrap() + s.3.len());
    }
    let total = *offsets.last().unwrap();
    Layout { slots, offsets, total, index }
}

impl Layout {
    fn coords_of(&self, a: &Algebra, f: &ChainMap) -> Vec<Scalar> {
        let mut v = vec![a.field.zero(); self.total];
        for (si, (k, i, j, pairs)) in self.slots.iter().enumerate() {
            if let Some(mat) = f.mats.get(k) {
                let e = mat.get(*i, *j);
                for (pi, &b) in pairs.iter().enumerate() {
                    v[self.offsets[si] + pi] = e.0[b].clone();
                }
            }
        }
        v
    }

    fn chain_map_from(&self, a: &Algebra, v: &[Scalar], x: &ProjComplex, y: &ProjComplex, off: i32) -> ChainMap {
        let mut mats: BTreeMap<i32, AlgMat> = BTreeMap::new();
        for (si, (k, i, j, pairs)) in self.slots.iter().enumerate() {
            let dst = y.term(k + off);
            let src = x.term(*k);
            let m = mats
                .entry(*k)
                .or_insert_with(|| AlgMat::zero(a, dst.len(), src.len()));
            let mut e = m.get(*i, *j).clone();
            let mut nonzero = false;
            for (pi, &b) in pairs.iter().enumerate() {
                let c = &v[self.offsets[si] + pi];
                if !c.is_zero() {
                    e.0[b] = e.0[b].add(c);
                    nonzero = true;
                }
            }
            if nonzero {
                m.set(*i, *j, e);
            }
        }
        ChainMap { mats }
    }
}

// `mat_at` needs a target complex only for shaping; avoid building shifted
// copies by passing the real target everywhere instead.
fn shift_dummy(y: &ProjComplex, _k: i32) -> ProjComplex {
    y.clone()
}

/// The shift window outside which `Hom(X, Y[j])` vanishes identically.
pub fn hom_window(x: &ProjComplex, y: &ProjComplex) -> Option<RangeInclusive<i32>> {
    if x.is_zero() || y.is_zero() {
        return None;
    }
    Some((y.lo - x.hi())..=(y.hi() - x.lo))
}

/// Basis of chain maps `X -> Y` modulo null-homotopy (at shift 0; shift the
/// target for other degrees).
#[derive(Debug)]
pub struct HomotopyHomSpace {
    pub shift: i32,
    /// The shifted target `Y[shift]` the representatives map into.
    pub target: ProjComplex,
    pub dim: usize,
    pub basis: Vec<ChainMap>,
    layout: Layout,
    /// columns: boundary basis then class representatives (for coordinates)
    coord_matrix: Mat,
    boundary_rank: usize,
}

impl HomotopyHomSpace {
    /// Write the homotopy class of `f: X -> Y[shift]` in `self.basis`.
    pub fn class_coords(&self, x: &ProjComplex, f: &ChainMap) -> Result<Vec<Scalar>> {
        let a = &x.algebra;
        let v = self.layout.coords_of(a, f, x, &self.target, 0);
        let sol = self
            .coord_matrix
            .solve(&v)?
            .ok_or_else(|| Error::Internal("map is not a chain map into the target".into()))?;
        Ok(sol[self.boundary_rank..].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
}

/// Compute `Hom_{K^b}(X, Y[j])` exactly.
pub fn homotopy_hom(x: &ProjComplex, y: &ProjComplex, j: i32) -> Result<HomotopyHomSpace> {
    if x.algebra.id != y.algebra.id {
        return Err(Error::AlgebraMismatch);
    }
    let a = x.algebra.clone();
    let field = a.field;
    let target = y.shift(j);
    let lay = layout(x, &target, 0);
    if lay.total == 0 {
        return Ok(HomotopyHomSpace {
            shift: j,
            target,
            dim: 0,
            basis: Vec::new(),
            layout: lay,
            coord_matrix: Mat::zero(field, 0, 0),
            boundary_rank: 0,
        });
    }
    // chain map constraints: f^{k+1} d_X^k - d_Y^k f^k = 0
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for k in x.lo - 1..=x.hi() {
        let dst = target.term(k + 1);
        let src = x.term(k);
        if src.is_empty() || dst.is_empty() {
            continue;
        }
        let dx = x.diff(k);
        let dy = target.diff(k);
        for (r, &w) in dst.iter().enumerate() {
            for (c, &v) in src.iter().enumerate() {
                // one equation per basis element of e_wAe_v
                let comp_basis = &a.pair_basis[w - 1][v - 1];
                if comp_basis.is_empty() {
                    continue;
                }
                let mut eq: Vec<Vec<Scalar>> =
                    vec![vec![field.zero(); lay.total]; comp_basis.len()];
                // f^{k+1}[r, q] . dx[q, c]
                for q in 0..x.term(k + 1).len() {
                    let d_entry = dx.get(q, c);
                    if a.elem_is_zero(d_entry) {
                        continue;
                    }
                    if let Some(&slot) = lay.index.get(&(k + 1, r, q)) {
                        let pairs = &lay.slots[slot].3;
                        for (pi, &b) in pairs.iter().enumerate() {
                            let prod = a.multiply(&a.basis_elem(b), d_entry);
                            for (ci, &cb) in comp_basis.iter().enumerate() {
                                if !prod.0[cb].is_zero() {
                                    eq[ci][lay.offsets[slot] + pi] =
                                        eq[ci][lay.offsets[slot] + pi].add(&prod.0[cb]);
                                }
                            }
                        }
                    }
                }
                // - dy[r, p] . f^k[p, c]
                for p in 0..target.term(k).len() {
                    let d_entry = dy.get(r, p);
                    if a.elem_is_zero(d_entry) {
                        continue;
                    }
                    if let Some(&slot) = lay.index.get(&(k, p, c)) {
                        let pairs = &lay.slots[slot].3;
                        for (pi, &b) in pairs.iter().enumerate() {
                            let prod = a.multiply(d_entry, &a.basis_elem(b));
                            for (ci, &cb) in comp_basis.iter().enumerate() {
                                if !prod.0[cb].is_zero() {
                                    eq[ci][lay.offsets[slot] + pi] =
                                        eq[ci][lay.offsets[slot] + pi].sub(&prod.0[cb]);
                                }
                            }
                        }
                    }
                }
                for row in eq {
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let constraints = if rows.is_empty() {
        Mat::zero(field, 0, lay.total)
    } else {
        Mat::from_rows(field, rows)?
    };
    let chain_maps = constraints.kernel_basis();

    // boundaries dh + hd from the homotopy layout
    let hlay = layout(x, &target, -1);
    let mut boundary_cols: Vec<Vec<Scalar>> = Vec::new();
    for (si, (k, i, j2, pairs)) in hlay.slots.iter().enumerate() {
        let _ = si;
        for &b in pairs {
            let belem = a.basis_elem(b);
            let mut img = vec![field.zero(); lay.total];
            // d_Y^{k-1}[r, i] . b lands in f^k[r, j2]
            let dy = target.diff(k - 1);
            for r in 0..target.term(*k).len() {
                let d_entry = dy.get(r, *i);
                if a.elem_is_zero(d_entry) {
                    continue;
                }
                let prod = a.multiply(d_entry, &belem);
                if let Some(&slot) = lay.index.get(&(*k, r, *j2)) {
                    for (pi, &pb) in lay.slots[slot].3.iter().enumerate() {
                        if !prod.0[pb].is_zero() {
                            img[lay.offsets[slot] + pi] =
                                img[lay.offsets[slot] + pi].add(&prod.0[pb]);
                        }
                    }
                }
            }
            // b . d_X^{k-1}[j2, c] lands in f^{k-1}[i, c]
            let dx = x.diff(k - 1);
            for c in 0..x.term(k - 1).len() {
                let d_entry = dx.get(*j2, c);
                if a.elem_is_zero(d_entry) {
                    continue;
                }
                let prod = a.multiply(&belem, d_entry);
                if let Some(&slot) = lay.index.get(&(k - 1, *i, c)) {
                    for (pi, &pb) in lay.slots[slot].3.iter().enumerate() {
                        if !prod.0[pb].is_zero() {
                            img[lay.offsets[slot] + pi] =
                                img[lay.offsets[slot] + pi].add(&prod.0[pb]);
                        }
                    }
                }
            }
            if img.iter().any(|x| !x.is_zero()) {
                boundary_cols.push(img);
            }
        }
    }
    // pick class representatives extending an echelon of the boundaries
    let mut elim = Eliminator::new(field, lay.total);
    let mut boundary_basis = Vec::new();
    for bcol in &boundary_cols {
        if elim.insert(bcol) {
            boundary_basis.push(bcol.clone());
        }
    }
    let boundary_rank = boundary_basis.len();
    let mut reps = Vec::new();
    for z in &chain_maps {
        if elim.insert(z) {
            reps.push(z.clone());
        }
    }
    let mut cols = boundary_basis;
    cols.extend(reps.iter().cloned());
    let coord_matrix = Mat::from_cols(field, lay.total, &cols);
    let basis: Vec<ChainMap> = reps
        .iter()
        .map(|v| lay.chain_map_from(&a, v, x, &target, 0))
        .collect();
    if cfg!(debug_assertions) {
        for f in &basis {
            f.verify(x, &target)
                .expect("homotopy class representative must be a chain map");
        }
    }
    Ok(HomotopyHomSpace {
        shift: j,
        target,
        dim: basis.len(),
        basis,
        layout: lay,
        coord_matrix,
        boundary_rank,
    })
}

/// Dimensions of `Hom(X, Y[j])` over the whole window.
pub fn hom_table(x: &ProjComplex, y: &ProjComplex) -> Result<Vec<(i32, usize)>> {
    let mut out = Vec::new();
    if let Some(window) = hom_window(x, y) {
        for j in window {
            let h = homotopy_hom(x, y, j)?;
            if h.dim > 0 {
                out.push((j, h.dim));
            }
        }
    }
    Ok(out)
}

/// `Hom(X, X[j]) = 0` for all `j > 0`; only the degree-width window needs
/// checking, everything beyond vanishes for bounded complexes.
pub fn is_presilting(x: &ProjComplex) -> Result<bool> {
    for j in 1..=x.width() {
        if homotopy_hom(x, x, j)?.dim > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::p_e;
    use crate::families;
    use crate::field::Field;
    use std::sync::Arc;

    fn a4() -> Arc<Algebra> {
        Arc::new(families::build_a_n(4, Field::Q).unwrap())
    }

    #[test]
    fn self_homs_of_the_algebra_stalk() {
        let a = a4();
        let s = ProjComplex::algebra_stalk(a.clone(), 0);
        let h = homotopy_hom(&s, &s, 0).unwrap();
        // End(A) = A
        assert_eq!(h.dim, a.dim);
        assert!(is_presilting(&s).unwrap());
    }

    #[test]
    fn ext_table_of_the_uniserial_resolution() {
        // dim Hom(P_E, P_E[j]) = 1 for j in {0, 3}, otherwise 0 (n = 4)
        let a = a4();
        let pe = p_e(&a);
        let window = hom_window(&pe, &pe).unwrap();
        assert_eq!(window, -3..=3);
        for j in window {
            let h = homotopy_hom(&pe, &pe, j).unwrap();
            let expected = usize::from(j == 0 || j == 3);
            assert_eq!(h.dim, expected, "dim Hom(P_E, P_E[{j}])");
        }
        assert!(!is_presilting(&pe).unwrap());
    }

    #[test]
    fn hom_orthogonality_with_the_twisted_resolution() {
        let a = a4();
        let pe = p_e(&a);
        let eps = families::swap_xy_automorphism(&a).unwrap();
        let ape = pe.twist(&eps).unwrap();
        for j in hom_window(&pe, &ape).unwrap() {
            assert_eq!(homotopy_hom(&pe, &ape, j).unwrap().dim, 0);
        }
    }

    #[test]
    fn homs_from_the_algebra_compute_homology_dimensions() {
        // Hom(A, X[j]) has the dimension of H^j(X); check on P_E where the
        // homology is E in degree 0
        let a = a4();
        let s = ProjComplex::algebra_stalk(a.clone(), 0);
        let pe = p_e(&a);
        for j in hom_window(&s, &pe).unwrap() {
            let h = homotopy_hom(&s, &pe, j).unwrap();
            let expected = if j == 0 { 4 } else { 0 }; // dim_k E = 4
            assert_eq!(h.dim, expected, "H^{j}(P_E) dimension");
        }
    }

    #[test]
    fn class_coordinates_match_basis() {
        let a = a4();
        let pe = p_e(&a);
        let h = homotopy_hom(&pe, &pe, 0).unwrap();
        assert_eq!(h.dim, 1);
        let coords = h.class_coords(&pe, &h.basis[0]).unwrap();
        assert!(coords[0].is_one());
        // the identity is a chain map; its class is some multiple of the rep
        let id = crate::complex::ChainMap::identity(&pe);
        let idc = h.class_coords(&pe, &id).unwrap();
        assert!(!idc[0].is_zero());
    }

    #[test]
    fn window_outside_support_is_empty() {
        let a = a4();
        let s = ProjComplex::stalk(a.clone(), vec![1], 0).unwrap();
        let z = ProjComplex::zero(a);
        assert!(hom_window(&s, &z).is_none());
        assert_eq!(homotopy_hom(&s, &z, 0).unwrap().dim, 0);
    }
}
