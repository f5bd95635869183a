//! Parity extension of the double cover.
//!
//! SL(2,C) embeds in GL(4,C) as Phi(A) = diag(A, A^dagger^{-1}); adding
//! P~ = [[0, I], [I, 0]] gives a group whose image under the gamma-matrix
//! conjugation is the orthochronous Lorentz group including reflections.

use nalgebra::{Matrix2, Matrix4};

use crate::boosting::wigner;
use crate::error::Result;
use crate::little_group::{decompose_lower_little, eta, eta_bar, reference_momentum, Helicity, LittleGroupElement};
use crate::lorentz::{kappa, tilde, untilde, utilde, FourVector, LorentzMatrix, Mat2, Sl2c};
use crate::mass_shell::MomentumPoint;
use crate::C64;

pub type Mat4 = Matrix4<C64>;

fn blocks(a: &Mat2, b: &Mat2, c: &Mat2, d: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(c);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    m
}

pub fn phi_embed(a: &Sl2c) -> Mat4 {
    let z = Mat2::zeros();
    blocks(a.matrix(), &z, &z, a.dagger_inverse().matrix())
}

pub fn p_tilde() -> Mat4 {
    let z = Mat2::zeros();
    let i = Mat2::identity();
    blocks(&z, &i, &i, &z)
}

/// gamma(x) = [[0, tilde x], [utilde x, 0]].
pub fn gamma_map(x: &FourVector) -> Mat4 {
    let z = Mat2::zeros();
    blocks(&z, &tilde(x), &utilde(x), &z)
}

/// Element P~^parity Phi(core).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtendedElement {
    pub core: Sl2c,
    pub parity: bool,
}

impl ExtendedElement {
    pub fn proper(core: Sl2c) -> Self {
        ExtendedElement { core, parity: false }
    }

    pub fn parity_op() -> Self {
        ExtendedElement { core: Sl2c::identity(), parity: true }
    }

    pub fn matrix(&self) -> Mat4 {
        if self.parity {
            p_tilde() * phi_embed(&self.core)
        } else {
            phi_embed(&self.core)
        }
    }

    /// Uses Phi(A) P~ = P~ Phi(A^dagger^{-1}).
    pub fn mul(&self, o: &ExtendedElement) -> ExtendedElement {
        let left = if o.parity { self.core.dagger_inverse() } else { self.core };
        ExtendedElement { core: left.mul(&o.core), parity: self.parity ^ o.parity }
    }
}

/// kappa~(g) defined by gamma(kappa~(g) x) = g gamma(x) g^{-1}.
pub fn kappa_tilde(g: &ExtendedElement) -> LorentzMatrix {
    let m = g.matrix();
    let inv = m.try_inverse().expect("group element is invertible");
    let mut out = Matrix4::<f64>::zeros();
    for nu in 0..4 {
        let mut e = [0.0; 4];
        e[nu] = 1.0;
        let img = m * gamma_map(&FourVector(e)) * inv;
        let col = untilde(&img.fixed_view::<2, 2>(0, 2).into_owned());
        for mu in 0..4 {
            out[(mu, nu)] = col.0[mu];
        }
    }
    LorentzMatrix(out)
}

/// delta(a, A) = (P a, A^dagger^{-1}).
pub fn delta(a: &FourVector, l: &Sl2c) -> (FourVector, Sl2c) {
    (a.parity(), l.dagger_inverse())
}

/// Element (a, g) of the extended Poincare group.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtendedPoincare {
    pub a: FourVector,
    pub g: ExtendedElement,
}

impl ExtendedPoincare {
    pub fn mul(&self, o: &ExtendedPoincare) -> ExtendedPoincare {
        ExtendedPoincare { a: self.a.add(&kappa_tilde(&self.g).apply(&o.a)), g: self.g.mul(&o.g) }
    }
}

/// Residual of eta_bar_s(R B R^{-1}) = eta_s(B)^{-1} and kappa(R) p0 = P p0,
/// with R = [[0, -1], [1, 0]].
pub fn helicity_flip_check(s: Helicity, b: &LittleGroupElement) -> Result<f64> {
    let r = Sl2c::from_unchecked(Matrix2::new(C64::new(0.0, 0.0), C64::new(-1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)));
    let conj = r.mul(&b.to_sl2c()).mul(&r.inverse());
    let low = decompose_lower_little(&conj)?;
    let flip = (eta_bar(s, &low) - eta(s, b).inv()).norm();
    let p0 = reference_momentum();
    let moved = kappa(&r).apply(&p0).sub(&p0.parity()).norm_max();
    Ok(flip.max(moved))
}

/// A point of the boosting bundle with its helicity fiber value.
pub type FiberPoint = (MomentumPoint, [C64; 2]);

/// lambda(a, A)(p, v) = (A p, exp(-i <A p, a>) eta~(W(A, p)) v).
pub fn fiber_action(s: Helicity, a: &FourVector, l: &Sl2c, x: &FiberPoint) -> Result<FiberPoint> {
    let (p, v) = x;
    let q = p.transform(l)?;
    let e = eta(s, &wigner(l, p)?);
    let ph = C64::from_polar(1.0, -q.four().minkowski(a));
    Ok((q, [ph * e * v[0], ph * e.conj() * v[1]]))
}

/// Doubled action: proper elements act by (lambda, lambda o delta); the
/// parity part swaps the two copies.
pub fn doubled_fiber_action(s: Helicity, g: &ExtendedPoincare, x: &(FiberPoint, FiberPoint)) -> Result<(FiberPoint, FiberPoint)> {
    let b = if g.g.parity { g.a.parity() } else { g.a };
    let c = g.g.core;
    let (db, dc) = delta(&b, &c);
    let first = fiber_action(s, &b, &c, &x.0)?;
    let second = fiber_action(s, &db, &dc, &x.1)?;
    Ok(if g.g.parity { (second, first) } else { (first, second) })
}

pub fn fiber_pair_distance(x: &(FiberPoint, FiberPoint), y: &(FiberPoint, FiberPoint)) -> f64 {
    let one = |a: &FiberPoint, b: &FiberPoint| {
        let dp = a.0.four().sub(&b.0.four()).norm_max();
        dp.max((a.1[0] - b.1[0]).norm()).max((a.1[1] - b.1[1]).norm())
    };
    one(&x.0, &y.0).max(one(&x.1, &y.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cmax;

    #[test]
    fn clifford_relation() {
        let eta = [1.0, -1.0, -1.0, -1.0];
        for mu in 0..4 {
            for nu in 0..4 {
                let mut e = [0.0; 4];
                e[mu] = 1.0;
                let gm = gamma_map(&FourVector(e));
                let mut f = [0.0; 4];
                f[nu] = 1.0;
                let gn = gamma_map(&FourVector(f));
                let anti = gm * gn + gn * gm;
                let want = if mu == nu { 2.0 * eta[mu] } else { 0.0 };
                assert!(cmax(&(anti - Mat4::identity() * C64::new(want, 0.0))) < 1e-15);
            }
        }
    }

    #[test]
    fn parity_maps_to_reflection() {
        let k = kappa_tilde(&ExtendedElement::parity_op());
        let want = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, -1.0, -1.0));
        assert!((k.0 - want).abs().max() < 1e-15);
    }
}
