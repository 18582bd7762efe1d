//! The spaces 𝒲_p and 𝒰_p, rebuilt from their explicit quaternionic
//! descriptions and compared with the library's spans of ρ_p.

use jordan_core::repforge::{big_o, dim_d, phi, quat_q, spaces_wu, Quaternion};
use jordan_core::{GaussRational, Mat, Rational, Subspace};

fn q(a: i64, b: i64, c: i64, d: i64) -> Quaternion {
    Quaternion::from_ints(a, b, c, d)
}

fn units() -> [Quaternion; 4] {
    [q(1, 0, 0, 0), q(0, 1, 0, 0), q(0, 0, 1, 0), q(0, 0, 0, 1)]
}

fn o(a: &Quaternion, b: &Quaternion) -> Mat {
    big_o(a, b)
}

fn span(ms: &[Mat]) -> Subspace<Rational> {
    Subspace::span_of(ms).unwrap()
}

// `O(q, h)` with q ranging over `qs` and h over `hs` (linear in the pair).
fn o_span(qs: &[Quaternion], hs: &[Quaternion]) -> Vec<Mat> {
    let z = Quaternion::zero();
    qs.iter()
        .map(|x| o(x, &z))
        .chain(hs.iter().map(|h| o(&z, h)))
        .collect()
}

fn listed_w(p: usize) -> Subspace<Rational> {
    let [one, i, j, k] = units();
    let imag = [i.clone(), j.clone(), k.clone()];
    match p {
        1 => Subspace::zero(1, 1),
        2 => span(&[phi(&GaussRational::i())]),
        3 => span(&[quat_q(&i), quat_q(&j)]),
        4 => span(&imag.iter().map(quat_q).collect::<Vec<_>>()),
        5 => span(&o_span(&[], &units())),
        6 => span(&o_span(&[i, j], &imag)),
        7 => span(&o_span(&imag, &imag)),
        8 => span(&o_span(&imag, &[one, i, j, k])),
        _ => {
            // Block form of the recursion.
            let inner = listed_w(p - 8);
            let d = dim_d(p - 8).unwrap();
            let id8 = Mat::identity(8);
            let idd = Mat::identity(d);
            let zero = Mat::zeros(8 * d, 8 * d);
            let mut gens: Vec<Mat> = inner
                .basis()
                .iter()
                .map(|a| Mat::block2(&id8.kron(a), &zero, &zero, &id8.kron(a).neg()))
                .collect();
            for m in o_span(&units(), &units()) {
                let b = m.kron(&idd);
                gens.push(Mat::block2(&zero, &b, &b.transpose().neg(), &zero));
            }
            span(&gens)
        }
    }
}

#[test]
fn w_and_u_match_the_explicit_lists() {
    for p in 1..=12 {
        let (w, u) = spaces_wu(p).unwrap();
        let expected = listed_w(p);
        assert_eq!(w, expected, "W_{p}");
        assert_eq!(w.dim(), p - 1);
        let d = dim_d(p).unwrap();
        assert_eq!(u, w.sum(&Subspace::scalars(d)).unwrap(), "U_{p}");
    }
}

#[test]
fn low_u_spaces_are_the_listed_ones() {
    let [one, i, j, k] = units();
    let z = Quaternion::zero();
    let (_, u2) = spaces_wu(2).unwrap();
    assert_eq!(
        u2,
        span(&[
            phi(&GaussRational::from_ints(1, 0)),
            phi(&GaussRational::i())
        ])
    );
    let (_, u3) = spaces_wu(3).unwrap();
    assert_eq!(u3, span(&[quat_q(&one), quat_q(&i), quat_q(&j)]));
    let (_, u4) = spaces_wu(4).unwrap();
    assert_eq!(u4, span(&units().iter().map(quat_q).collect::<Vec<_>>()));
    let (_, u5) = spaces_wu(5).unwrap();
    let mut g5 = o_span(&[], &units());
    g5.push(o(&one, &z));
    assert_eq!(u5, span(&g5));
    let (_, u6) = spaces_wu(6).unwrap();
    assert_eq!(
        u6,
        span(&o_span(
            &[one.clone(), i.clone(), j.clone()],
            &[i.clone(), j.clone(), k.clone()]
        ))
    );
    let (_, u7) = spaces_wu(7).unwrap();
    assert_eq!(
        u7,
        span(&o_span(&units(), &[i.clone(), j.clone(), k.clone()]))
    );
    let (_, u8) = spaces_wu(8).unwrap();
    assert_eq!(u8, span(&o_span(&units(), &units())));
}

// Every element of 𝒰_p is a multiple of an orthogonal matrix:
// u uᵀ = |c|² I for u = Σ cᵢ Eᵢ over the orthonormal-up-to-scale basis.
#[test]
fn u_elements_are_multiples_of_orthogonal_matrices() {
    use jordan_core::rng;
    let mut r = rng::seeded(17);
    for p in 1..=10 {
        let (_, u) = spaces_wu(p).unwrap();
        let d = dim_d(p).unwrap();
        for _ in 0..5 {
            let coeffs: Vec<Rational> = (0..u.dim())
                .map(|_| Rational::from_int(rng::int_in(&mut r, -4, 4)))
                .collect();
            let m = u.combination(&coeffs);
            let g = m.mul(&m.transpose());
            let c = g.get(0, 0).clone();
            assert_eq!(g, Mat::scalar(d, c.clone()), "p = {p}");
            assert_eq!(c.is_zero(), m.is_zero());
        }
    }
}
