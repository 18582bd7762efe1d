//! The real matrix models of complex numbers and quaternions: `φ`, `ψ`, `Q`,
//! `Q̂` and the 8×8 map `𝕆`.

use alloc::vec;

use super::quaternion::Quaternion;
use crate::exactla::{GaussRational, Mat, Rational};

fn m2(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Mat {
    Mat::from_rows(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]).expect("2x2")
}

/// `φ(x + iy) = [[x, −y], [y, x]]`.
pub fn phi(z: &GaussRational) -> Mat {
    m2(&z.re, &-&z.im, &z.im, &z.re)
}

/// `ψ(x + iy) = [[x, y], [y, −x]]`.
pub fn psi(z: &GaussRational) -> Mat {
    m2(&z.re, &z.im, &z.im, &-&z.re)
}

fn cx(re: &Rational, im: &Rational) -> GaussRational {
    GaussRational::new(re.clone(), im.clone())
}

/// `Q(q) = [[φ(q0 + i q1), −ψ(q2 + i q3)], [ψ(q2 + i q3), φ(q0 + i q1)]]`.
pub fn quat_q(q: &Quaternion) -> Mat {
    let a = phi(&cx(&q.q0, &q.q1));
    let b = psi(&cx(&q.q2, &q.q3));
    Mat::block2(&a, &b.neg(), &b, &a)
}

/// `Q̂(q) = [[φ(q0 + i q1), φ(q2 + i q3)], [−φ(q2 − i q3), φ(q0 − i q1)]]`.
pub fn hat_q(q: &Quaternion) -> Mat {
    Mat::block2(
        &phi(&cx(&q.q0, &q.q1)),
        &phi(&cx(&q.q2, &q.q3)),
        &phi(&cx(&q.q2, &-&q.q3)).neg(),
        &phi(&cx(&q.q0, &-&q.q1)),
    )
}

/// `𝕆(q, h) = [[Q(q), Q̂(h)], [−Q̂(h̄), Q(q̄)]]`.
pub fn big_o(q: &Quaternion, h: &Quaternion) -> Mat {
    Mat::block2(
        &quat_q(q),
        &hat_q(h),
        &hat_q(&h.conj()).neg(),
        &quat_q(&q.conj()),
    )
}
