//! Catalog of the three-term bilinear relations between determinant
//! tau-functions, stored as data: each term is a signed monomial
//! coefficient times a product of two shifted tau-functions.

use serde::Serialize;

use crate::scalar::{ComplexScalar, Real};
use crate::special::QContext;

type C<R> = ComplexScalar<R>;

/// `c0 + c1·p1 + c2·p2 + c3·p3` for a parameter triple `(p1, p2, p3)`,
/// which is `(m, n, k)` for the untilded relations and `(a, b, c)` for the
/// tilded ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Affine(pub i64, pub i64, pub i64, pub i64);

impl Affine {
    pub const ZERO: Affine = Affine(0, 0, 0, 0);

    pub fn eval_int(&self, p: (i64, i64, i64)) -> i64 {
        self.0 + self.1 * p.0 + self.2 * p.1 + self.3 * p.2
    }

    pub fn eval<R: Real>(&self, m: &C<R>, n: i64, k: &C<R>) -> C<R> {
        m.scale_f64(self.1 as f64)
            + k.scale_f64(self.3 as f64)
            + m.like((self.0 + self.2 * n) as f64, 0.0)
    }
}

/// Index shift of one tau-function factor relative to the base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Offset(pub i64, pub i64, pub i64);

/// Signed monomial `sign · x^x_pow · a₁^a1_pow · a₂^a2_pow · q^q_exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Coefficient {
    pub sign: i8,
    pub x_pow: i32,
    pub a1_pow: i32,
    pub a2_pow: i32,
    pub q_exp: Affine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub coeff: Coefficient,
    pub left: Offset,
    pub right: Offset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// Relations in `ξ_{m,n,k}` with explicit `x = e^{πiu}` and `q` powers.
    Thm2,
    /// Relations in `ξ̃_{a,b,c}` with coefficients in `x, a₁, a₂, q`.
    Thm3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationSpec {
    pub id: String,
    pub family: Family,
    pub terms: [Term; 3],
}

/// Coefficient values of the tilded relations: `x`, `a₁`, `a₂` after the
/// specialisation `(a₁, a₂, x) = (-q^m, q^{-n}, x q^k)`.
#[derive(Clone, Debug)]
pub struct Specialisation<R: Real> {
    pub x: C<R>,
    pub a1: C<R>,
    pub a2: C<R>,
}

impl<R: Real> Specialisation<R> {
    pub fn new(ctx: &QContext<R>, x: &C<R>, m: &C<R>, n: i64, k: &C<R>) -> Self {
        Specialisation {
            x: x.clone() * ctx.epow(k),
            a1: -ctx.epow(m),
            a2: ctx.epow_f64(-(n as f64)),
        }
    }
}

fn pow<R: Real>(z: &C<R>, e: i32) -> C<R> {
    z.powi(e as i64).expect("nonzero coefficient variable")
}

impl Coefficient {
    /// Value at `(m, n, k)` for an untilded relation.
    pub fn eval_thm2<R: Real>(
        &self,
        ctx: &QContext<R>,
        x: &C<R>,
        m: &C<R>,
        n: i64,
        k: &C<R>,
    ) -> C<R> {
        let v = pow(x, self.x_pow) * ctx.epow(&self.q_exp.eval(m, n, k));
        if self.sign < 0 {
            -v
        } else {
            v
        }
    }

    /// Value at integer `(a, b, c)` for a tilded relation.
    pub fn eval_thm3<R: Real>(
        &self,
        ctx: &QContext<R>,
        s: &Specialisation<R>,
        abc: (i64, i64, i64),
    ) -> C<R> {
        let v = pow(&s.x, self.x_pow)
            * pow(&s.a1, self.a1_pow)
            * pow(&s.a2, self.a2_pow)
            * ctx.epow_f64(self.q_exp.eval_int(abc) as f64);
        if self.sign < 0 {
            -v
        } else {
            v
        }
    }
}

const fn t2(sign: i8, x_pow: i32, q: Affine, left: Offset, right: Offset) -> Term {
    Term {
        coeff: Coefficient {
            sign,
            x_pow,
            a1_pow: 0,
            a2_pow: 0,
            q_exp: q,
        },
        left,
        right,
    }
}

#[allow(clippy::too_many_arguments)]
const fn t3(
    sign: i8,
    x_pow: i32,
    a1_pow: i32,
    a2_pow: i32,
    q: Affine,
    left: Offset,
    right: Offset,
) -> Term {
    Term {
        coeff: Coefficient {
            sign,
            x_pow,
            a1_pow,
            a2_pow,
            q_exp: q,
        },
        left,
        right,
    }
}

/// Relations (1)–(8) among `ξ_{m,n,k}`; offsets are `(Δm, Δn, Δk)`.
pub fn thm2_catalog() -> Vec<EquationSpec> {
    use Affine as A;
    use Offset as O;
    let eqs: [[Term; 3]; 8] = [
        [
            t2(1, 2, A(0, 1, 0, 2), O(-1, -1, 1), O(0, 0, 0)),
            t2(-1, 1, A(0, 1, -1, 1), O(0, -1, 1), O(-1, 0, 0)),
            t2(1, 0, A(0, 0, 1, 0), O(0, 0, 1), O(-1, -1, 0)),
        ],
        [
            t2(1, 2, A(0, -1, 2, 2), O(-1, -1, 0), O(0, 0, -1)),
            t2(-1, 1, A(0, 0, 0, 1), O(-1, 0, 0), O(0, -1, -1)),
            t2(1, 0, A(0, 0, 1, 0), O(0, 0, 0), O(-1, -1, -1)),
        ],
        [
            t2(1, 1, A(0, 1, -1, 1), O(-1, -2, 0), O(0, 0, -1)),
            t2(-1, 0, A(0, 0, 1, 0), O(-1, -1, 0), O(0, -1, -1)),
            t2(1, 0, A::ZERO, O(0, -1, 0), O(-1, -1, -1)),
        ],
        [
            t2(1, 1, A::ZERO, O(-1, -1, 1), O(0, -1, 0)),
            t2(-1, 1, A(0, 0, 1, 0), O(0, -1, 1), O(-1, -1, 0)),
            t2(1, 0, A(0, 1, -1, -1), O(-1, -2, 0), O(0, 0, 1)),
        ],
        [
            t2(1, 2, A(0, 1, 0, 2), O(-2, -1, 1), O(0, 0, 0)),
            t2(-1, 1, A(0, 1, -1, 1), O(-1, -1, 1), O(-1, 0, 0)),
            t2(1, 0, A::ZERO, O(0, 0, 1), O(-2, -1, 0)),
        ],
        [
            t2(1, 2, A(0, -1, 0, 2), O(-2, -1, 0), O(0, 0, -1)),
            t2(-1, 1, A(0, 0, -1, 1), O(-1, 0, 0), O(-1, -1, -1)),
            t2(1, 0, A::ZERO, O(0, 0, 0), O(-2, -1, -1)),
        ],
        [
            t2(1, 1, A(0, 2, -1, 1), O(0, 0, 0), O(-1, -2, 0)),
            t2(-1, 0, A(0, 0, 1, 0), O(0, -1, 0), O(-1, -1, 0)),
            t2(1, 0, A::ZERO, O(0, -1, 1), O(-1, -1, -1)),
        ],
        [
            t2(1, 1, A(0, 0, 0, 1), O(0, -1, -1), O(-1, -1, 1)),
            t2(-1, 1, A(0, 0, 1, 1), O(-1, -1, 0), O(0, -1, 0)),
            t2(1, 0, A(0, 2, -1, 0), O(0, 0, 0), O(-1, -2, 0)),
        ],
    ];
    eqs.into_iter()
        .enumerate()
        .map(|(i, terms)| EquationSpec {
            id: (i + 1).to_string(),
            family: Family::Thm2,
            terms,
        })
        .collect()
}

/// Which coefficients to use for relation (18).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Thm3Form {
    /// Third exponent `2a - b + c`, the image of relation (8).
    Canonical,
    /// Third exponent `2a + 2b + c`.
    Printed,
}

/// Relations (11)–(18) among `ξ̃_{a,b,c}`; offsets are `(Δa, Δb, Δc)`.
pub fn thm3_catalog(form: Thm3Form) -> Vec<EquationSpec> {
    use Affine as A;
    use Offset as O;
    let e18 = match form {
        Thm3Form::Canonical => A(0, 2, -1, 1),
        Thm3Form::Printed => A(0, 2, 2, 1),
    };
    let eqs: [[Term; 3]; 8] = [
        [
            t3(1, 0, -1, -1, A(0, 1, -1, -1), O(1, 1, 0), O(0, 0, 1)),
            t3(-1, 2, 0, 0, A(0, 0, 0, 1), O(1, 1, 1), O(0, 0, 0)),
            t3(1, 1, 0, 1, A(0, 0, 1, 0), O(1, 0, 0), O(0, 1, 1)),
        ],
        [
            t3(1, 2, -1, -1, A(0, 1, -1, 2), O(1, 1, 0), O(0, 0, -1)),
            t3(-1, 0, 0, 0, A::ZERO, O(1, 1, -1), O(0, 0, 0)),
            t3(1, 1, 0, 1, A(0, 0, 1, 1), O(1, 0, 0), O(0, 1, -1)),
        ],
        [
            t3(1, 1, 1, 1, A(0, 0, 1, 1), O(1, 2, 0), O(0, 0, -1)),
            t3(-1, 0, 0, 0, A(0, 1, 0, 0), O(1, 1, -1), O(0, 1, 0)),
            t3(1, 0, 0, -1, A(0, 1, -1, 0), O(1, 1, 0), O(0, 1, -1)),
        ],
        [
            t3(1, 0, 1, 1, A(0, 0, 1, -1), O(1, 2, 0), O(0, 0, 1)),
            t3(-1, 1, 0, 0, A(0, 1, 0, 0), O(1, 1, 1), O(0, 1, 0)),
            t3(1, 1, 0, -1, A(0, 1, -1, 0), O(1, 1, 0), O(0, 1, 1)),
        ],
        [
            t3(1, 0, 0, 0, A(0, 1, 0, -1), O(2, 1, 0), O(0, 0, 1)),
            t3(-1, 2, 1, 0, A(0, 0, 0, 1), O(2, 1, 1), O(0, 0, 0)),
            t3(1, 1, 1, 1, A(0, 0, 1, 0), O(1, 1, 1), O(1, 0, 0)),
        ],
        [
            t3(1, 2, 0, 0, A(0, 1, 0, 1), O(2, 1, 0), O(0, 0, -1)),
            t3(-1, 0, 1, 0, A(0, 0, 0, -1), O(2, 1, -1), O(0, 0, 0)),
            t3(1, 1, 1, 1, A(0, 0, 1, 0), O(1, 1, -1), O(1, 0, 0)),
        ],
        [
            t3(1, 1, 1, 1, A::ZERO, O(0, 0, 0), O(1, 2, 0)),
            t3(-1, 0, -1, -1, A(0, 2, -2, -1), O(1, 1, 0), O(0, 1, 0)),
            t3(1, 0, -1, 0, A(0, 2, -1, -1), O(0, 1, 1), O(1, 1, -1)),
        ],
        [
            t3(1, 0, 1, 1, A::ZERO, O(0, 0, 0), O(1, 2, 0)),
            t3(-1, 1, -1, -1, A(0, 2, -2, 1), O(1, 1, 0), O(0, 1, 0)),
            t3(1, 1, -1, 0, e18, O(0, 1, -1), O(1, 1, 1)),
        ],
    ];
    eqs.into_iter()
        .enumerate()
        .map(|(i, terms)| EquationSpec {
            id: (i + 11).to_string(),
            family: Family::Thm3,
            terms,
        })
        .collect()
}

/// Look up one relation by id (`"1"`..`"8"`, `"11"`..`"18"`).
pub fn equation(id: &str, form: Thm3Form) -> Option<EquationSpec> {
    thm2_catalog()
        .into_iter()
        .chain(thm3_catalog(form))
        .find(|e| e.id == id)
}
