//! Trivial extensions `T(A) = A ⋉ DA`, built structurally.
//!
//! The basis is the basis of `A` together with its dual basis; products are
//! `(a,f)(b,g) = (ab, ag + fb)` with the bimodule action `(afb)(x) = f(bxa)`
//! computed from the structure constants. The dual of a basis element
//! `b: i -> j` runs from `j` to `i`, and `DA` squares to zero, so the result
//! is a symmetric algebra with socle elements `e_i*`.

use crate::algebra::{AlgElem, Algebra, AlgebraAutomorphism, BasisElem, BasisKind, SparseVec};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::mat::Mat;
use std::sync::Arc;

pub struct TrivialExtension {
    pub base: Arc<Algebra>,
    pub algebra: Arc<Algebra>,
}

impl TrivialExtension {
    pub fn build(base: Arc<Algebra>) -> Result<TrivialExtension> {
        let d = base.dim;
        let field = base.field;
        let mut basis: Vec<BasisElem> = base.basis.clone();
        for (i, b) in base.basis.iter().enumerate() {
            basis.push(BasisElem {
                kind: BasisKind::Dual(i),
                from: b.to,
                to: b.from,
                degree: base.max_degree + 1,
            });
        }
        let coeff_of = |v: &SparseVec, j: usize| -> Option<Scalar> {
            v.iter().find(|(i, _)| *i == j).map(|(_, c)| c.clone())
        };
        let mut mult = vec![vec![Vec::new(); 2 * d]; 2 * d];
        for i in 0..d {
            for j in 0..d {
                // A part multiplies as before
                mult[i][j] = base.mult_basis(i, j);
                // b_i . b_j* : (b_i f)(x) = f(x b_i), so the b_k* coefficient
                // is the b_j coefficient of b_k b_i
                let mut left: SparseVec = Vec::new();
                for k in 0..d {
                    if let Some(c) = coeff_of(&base.mult_basis(k, i), j) {
                        left.push((d + k, c));
                    }
                }
                mult[i][d + j] = left;
                // b_j* . b_i : (f b_i)(x) = f(b_i x)
                let mut right: SparseVec = Vec::new();
                for k in 0..d {
                    if let Some(c) = coeff_of(&base.mult_basis(i, k), j) {
                        right.push((d + k, c));
                    }
                }
                mult[d + j][i] = right;
                // duals annihilate each other
            }
        }
        let algebra = Algebra::from_table(
            field,
            base.vertex_count,
            basis,
            base.idempotents.clone(),
            mult,
        )?;
        Ok(TrivialExtension { base, algebra: Arc::new(algebra) })
    }

    pub fn dual_index(&self, i: usize) -> usize {
        self.base.dim + i
    }

    /// The canonical inclusion `A -> T(A)` on coefficient vectors.
    pub fn include_elem(&self, a: &AlgElem) -> AlgElem {
        let mut out = self.algebra.zero_elem();
        for (i, c) in a.0.iter().enumerate() {
            out.0[i] = c.clone();
        }
        out
    }

    /// Extend an automorphism of `A` to `T(A)` by `(a, f) -> (s(a), f . s^{-1})`.
    pub fn extend_automorphism(&self, sigma: &AlgebraAutomorphism) -> Result<AlgebraAutomorphism> {
        if sigma.algebra_id != self.base.id {
            return Err(Error::AlgebraMismatch);
        }
        let d = self.base.dim;
        let field = self.base.field;
        let inv = sigma
            .subst
            .inverse()?
            .ok_or_else(|| Error::Internal("automorphism substitution is singular".into()))?;
        let inv_t = inv.transpose();
        let mut subst = Mat::zero(field, 2 * d, 2 * d);
        for i in 0..d {
            for j in 0..d {
                subst.set(i, j, sigma.subst.get(i, j).clone());
                subst.set(d + i, d + j, inv_t.get(i, j).clone());
            }
        }
        let auto =
            AlgebraAutomorphism { algebra_id: self.algebra.id, arrow_map: None, subst };
        auto.verify(&self.algebra)?;
        Ok(auto)
    }

    /// The linear form projecting to the socle coordinates (the `e_i*`), whose
    /// associated bilinear form `(a, b) -> phi(ab)` exhibits `T(A)` as a
    /// symmetric algebra.
    pub fn socle_form(&self, x: &AlgElem) -> Scalar {
        let mut acc = self.base.field.zero();
        for v in 1..=self.base.vertex_count {
            let idx = self.dual_index(self.base.idempotents[v - 1]);
            acc = acc.add(&x.0[idx]);
        }
        acc
    }

    pub fn socle_gram(&self) -> Mat {
        let t = &self.algebra;
        Mat::from_fn(t.field, t.dim, t.dim, |i, j| {
            self.socle_form(&t.multiply(&t.basis_elem(i), &t.basis_elem(j)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasisKind;
    use crate::families;
    use crate::field::Field;

    fn t_of_a_n(n: usize) -> TrivialExtension {
        let a = Arc::new(families::build_a_n(n, Field::Q).unwrap());
        TrivialExtension::build(a).unwrap()
    }

    #[test]
    fn dimensions_are_doubled() {
        for n in 2..=5 {
            let t = t_of_a_n(n);
            assert_eq!(t.algebra.dim, 2 * n * n);
        }
    }

    #[test]
    fn socle_elements_per_vertex() {
        let t = t_of_a_n(4);
        let alg = &t.algebra;
        for v in 1..=4 {
            // e_i T e_i = span{e_i, e_i*}
            assert_eq!(alg.pair_basis[v - 1][v - 1].len(), 2);
            let soc = alg.basis_elem(t.dual_index(t.base.idempotents[v - 1]));
            // e_i* is annihilated by the radical on both sides
            for i in 0..alg.dim {
                if alg.elem_in_radical(&alg.basis_elem(i)) {
                    assert!(alg.elem_is_zero(&alg.multiply(&soc, &alg.basis_elem(i))));
                    assert!(alg.elem_is_zero(&alg.multiply(&alg.basis_elem(i), &soc)));
                }
            }
        }
    }

    #[test]
    fn symmetric_nondegenerate_form() {
        for n in 2..=4 {
            let t = t_of_a_n(n);
            let g = t.socle_gram();
            assert_eq!(g, g.transpose());
            assert_eq!(g.rank(), t.algebra.dim);
        }
    }

    #[test]
    fn automorphism_extends() {
        let t = t_of_a_n(4);
        let eps = families::swap_xy_automorphism(&t.base).unwrap();
        let eps_t = t.extend_automorphism(&eps).unwrap();
        assert!(eps_t.compose(&eps_t).is_identity());
    }

    /// The wrap-around presentation of T(A_n) (even n) agrees with the
    /// structural construction: mapping the line arrows to themselves and the
    /// wrap arrows `x, y: n -> 1` to the duals of the alternating paths
    /// `y..y` and `x..x` from 1 to n defines an algebra isomorphism.
    #[test]
    fn presented_matches_structural_for_even_n() {
        for n in [2usize, 4] {
            let t = t_of_a_n(n);
            let pres = families::build_t_a_n_presented(n, Field::Q).unwrap();
            assert_eq!(pres.dim, t.algebra.dim);
            let q = pres.quiver.as_ref().unwrap();

            // images of the presented generators inside the structural T(A)
            let base_q = t.base.quiver.as_ref().unwrap();
            let mut alt_y = Vec::new(); // y x y ... (length n-1), starts and ends with y
            let mut alt_x = Vec::new();
            for k in 0..(n - 1) {
                alt_y.push(if k % 2 == 0 { "y" } else { "x" });
                alt_x.push(if k % 2 == 0 { "x" } else { "y" });
            }
            let py = base_q.path_from_word(1, &alt_y).unwrap();
            let px = base_q.path_from_word(1, &alt_x).unwrap();
            let iy = *t.base.basis.iter().enumerate()
                .find(|(_, b)| matches!(&b.kind, BasisKind::Path(p) if *p == py))
                .map(|(i, _)| i).as_ref().unwrap();
            let ix = *t.base.basis.iter().enumerate()
                .find(|(_, b)| matches!(&b.kind, BasisKind::Path(p) if *p == px))
                .map(|(i, _)| i).as_ref().unwrap();

            let arrow_image = |a: &crate::quiver::Arrow| -> AlgElem {
                if a.from < n || a.to != 1 {
                    // a line arrow of A
                    let p = base_q.path_from_word(a.from, &[a.label.as_str()]).unwrap();
                    t.include_elem(&t.base.elem_from_path(&p))
                } else if a.label == "x" {
                    t.algebra.basis_elem(t.dual_index(iy))
                } else {
                    t.algebra.basis_elem(t.dual_index(ix))
                }
            };

            // image of every presented basis path, by multiplying arrow images
            let images: Vec<AlgElem> = pres
                .basis
                .iter()
                .map(|b| {
                    let BasisKind::Path(p) = &b.kind else { unreachable!() };
                    let mut acc = t.algebra.idempotent_elem(p.from);
                    for &aid in &p.arrows {
                        acc = t.algebra.multiply(&acc, &arrow_image(q.arrow(aid)));
                    }
                    acc
                })
                .collect();

            // bijective: the images span
            let m = Mat::from_fn(Field::Q, t.algebra.dim, pres.dim, |r, c| {
                images[c].0[r].clone()
            });
            assert_eq!(m.rank(), pres.dim, "generator images must be a basis (n={n})");

            // multiplicative on all basis pairs
            for i in 0..pres.dim {
                for j in 0..pres.dim {
                    let prod = pres.multiply(&pres.basis_elem(i), &pres.basis_elem(j));
                    let mut expected = t.algebra.zero_elem();
                    for (k, c) in prod.0.iter().enumerate() {
                        if !c.is_zero() {
                            expected =
                                t.algebra.add_elems(&expected, &t.algebra.scale_elem(c, &images[k]));
                        }
                    }
                    let got = t.algebra.multiply(&images[i], &images[j]);
                    assert_eq!(got, expected, "structure constants differ at ({i},{j}), n={n}");
                }
            }

            // the swap automorphisms correspond under the isomorphism
            let eps_pres = families::swap_xy_automorphism(&pres).unwrap();
            let eps_struct =
                t.extend_automorphism(&families::swap_xy_automorphism(&t.base).unwrap()).unwrap();
            for i in 0..pres.dim {
                let lhs = {
                    let v = eps_pres.apply(&pres, &pres.basis_elem(i));
                    let mut acc = t.algebra.zero_elem();
                    for (k, c) in v.0.iter().enumerate() {
                        if !c.is_zero() {
                            acc = t.algebra.add_elems(&acc, &t.algebra.scale_elem(c, &images[k]));
                        }
                    }
                    acc
                };
                let rhs = eps_struct.apply(&t.algebra, &images[i]);
                assert_eq!(lhs, rhs, "swap automorphism mismatch at basis {i}, n={n}");
            }
        }
    }
}
