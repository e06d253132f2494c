//! Univariate polynomials over a field (coefficients lowest degree first) and their
//! evaluation inside an algebra.

use crate::algebra::FdAlgebra;
use crate::field::Field;
use crate::linalg::{Echelon, Matrix};

pub fn trim<F: Field>(field: F, mut p: Vec<F::El>) -> Vec<F::El> {
    while p.last().map_or(false, |c| field.is_zero(c)) {
        p.pop();
    }
    p
}

pub fn degree<F: Field>(field: F, p: &[F::El]) -> Option<usize> {
    p.iter().rposition(|c| !field.is_zero(c))
}

pub fn add<F: Field>(field: F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => field.add(x, y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(field, out)
}

pub fn sub<F: Field>(field: F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    let nb: Vec<F::El> = b.iter().map(|x| field.neg(x)).collect();
    add(field, a, &nb)
}

pub fn mul<F: Field>(field: F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            field.add_mul_assign(&mut out[i + j], x, y);
        }
    }
    trim(field, out)
}

/// Quotient and remainder of `a` by nonzero `b`.
pub fn divrem<F: Field>(field: F, a: &[F::El], b: &[F::El]) -> (Vec<F::El>, Vec<F::El>) {
    let db = degree(field, b).expect("division by zero polynomial");
    let lead_inv = field.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r = trim(field, a.to_vec());
    let mut q = vec![field.zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(field, &r) {
        if dr < db {
            break;
        }
        let c = field.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, y) in b.iter().enumerate().take(db + 1) {
            field.sub_mul_assign(&mut r[i + shift], &c, y);
        }
        q[shift] = c;
        r = trim(field, r);
    }
    (trim(field, q), r)
}

/// `(g, u, v)` with `g = gcd(a, b)` monic and `u a + v b = g`.
pub fn gcd_ext<F: Field>(field: F, a: &[F::El], b: &[F::El]) -> (Vec<F::El>, Vec<F::El>, Vec<F::El>) {
    let (mut r0, mut r1) = (trim(field, a.to_vec()), trim(field, b.to_vec()));
    let (mut s0, mut s1) = (vec![field.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![field.one()]);
    while degree(field, &r1).is_some() {
        let (q, r) = divrem(field, &r0, &r1);
        let s2 = sub(field, &s0, &mul(field, &q, &s1));
        let t2 = sub(field, &t0, &mul(field, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if let Some(d) = degree(field, &r0) {
        let inv = field.inv(&r0[d]).expect("nonzero");
        let sc = |p: &[F::El]| trim(field, p.iter().map(|x| field.mul(x, &inv)).collect());
        (sc(&r0), sc(&s0), sc(&t0))
    } else {
        (r0, s0, t0)
    }
}

/// `p(a)` inside the algebra.
pub fn eval_in<F: Field>(alg: &FdAlgebra<F>, p: &[F::El], a: &[F::El]) -> Vec<F::El> {
    let f = alg.field();
    let mut acc = alg.zero_elem();
    for c in p.iter().rev() {
        acc = alg.mul(&acc, a);
        for (x, u) in acc.iter_mut().zip(alg.unit()) {
            f.add_mul_assign(x, c, u);
        }
    }
    acc
}

/// Monic minimal polynomial of `a` in the algebra.
pub fn min_poly<F: Field>(alg: &FdAlgebra<F>, a: &[F::El]) -> Vec<F::El> {
    let f = alg.field();
    let mut powers = vec![alg.unit().to_vec()];
    let mut ech = Echelon::new(f, alg.dim());
    ech.insert(alg.unit().to_vec());
    loop {
        let next = alg.mul(powers.last().expect("nonempty"), a);
        if ech.contains(&next) {
            let m = Matrix::from_cols(f, alg.dim(), &powers);
            let c = m.solve(&next).expect("in span");
            let mut p: Vec<F::El> = c.iter().map(|x| f.neg(x)).collect();
            p.push(f.one());
            return p;
        }
        ech.insert(next.clone());
        powers.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::truncated_poly;
    use crate::field::{Rat, Rationals};

    fn q(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn division_and_gcd() {
        let f = Rationals;
        // (x^2 - 1) = (x - 1)(x + 1)
        let a = q(&[-1, 0, 1]);
        let b = q(&[1, 1]);
        let (qq, r) = divrem(f, &a, &b);
        assert_eq!(qq, q(&[-1, 1]));
        assert!(r.is_empty());
        let (g, u, v) = gcd_ext(f, &q(&[0, 0, 1]), &q(&[1, 1]));
        assert_eq!(g, q(&[1]));
        let lhs = add(f, &mul(f, &u, &q(&[0, 0, 1])), &mul(f, &v, &q(&[1, 1])));
        assert_eq!(lhs, g);
    }

    #[test]
    fn minimal_polynomial_of_nilpotent() {
        let a = truncated_poly(Rationals, 3);
        let m = min_poly(&a, &a.basis_elem(1));
        assert_eq!(m, q(&[0, 0, 0, 1]));
        assert!(a.is_zero(&eval_in(&a, &m, &a.basis_elem(1))));
    }
}
