//! Numeric substrate: a real-field abstraction with double and MPFR
//! backends, complex arithmetic on top of it, dense determinants and the
//! Gaussian error integral.

mod complex;
mod matrix;
mod mp;
mod real;

pub use complex::{Complex64, ComplexScalar};
pub use matrix::{det, Matrix};
pub use mp::Mp;
pub use real::Real;

/// Significand widths accepted by configuration.
pub const SUPPORTED_BITS: [u32; 4] = [53, 113, 128, 256];

/// `E(x) = 2 ∫₀ˣ exp(-π z²) dz = erf(√π x)`.
pub fn gauss_e<R: Real>(x: &R) -> R {
    let s = R::pi(x.bits()).sqrt();
    (s * x).erf()
}

/// `sgn(s) - E(y)` for a sign `s = ±1`, computed without cancellation.
///
/// With `E(y) = erf(√π y)` this is `s · erfc(s √π y)`.
pub fn gauss_e_gap<R: Real>(sign: i8, y: &R) -> R {
    let s = R::pi(y.bits()).sqrt();
    let arg = s * y;
    if sign >= 0 {
        arg.erfc()
    } else {
        -(-arg).erfc()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Midpoint rule for 2∫₀ˣ e^{-πz²} dz.
    fn midpoint(x: f64, panels: usize) -> f64 {
        let h = x / panels as f64;
        let mut acc = 0.0;
        for i in 0..panels {
            let z = (i as f64 + 0.5) * h;
            acc += (-std::f64::consts::PI * z * z).exp();
        }
        2.0 * acc * h
    }

    #[test]
    fn gauss_e_basic_values() {
        assert_eq!(gauss_e(&0.0f64), 0.0);
        assert!((gauss_e(&-0.7f64) + gauss_e(&0.7f64)).abs() < 1e-16);
        let quad = midpoint(1.0, 1_000_000);
        assert!((gauss_e(&1.0f64) - quad).abs() < 1e-10);
    }

    #[test]
    fn gauss_e_extended_matches_double() {
        let x = Mp::from_f64(1.0, 128);
        let e = gauss_e(&x);
        assert!((e.to_f64() - gauss_e(&1.0f64)).abs() < 1e-15);
        assert_eq!(e.bits(), 128);
    }

    #[test]
    fn gap_has_no_cancellation() {
        // E(8) is 1 to double precision, but 1 - E(8) = erfc(8√π) ≈ 1.7e-89.
        let g = gauss_e_gap(1, &8.0f64);
        assert!(g > 0.0 && g < 1e-80);
        let naive = 1.0 - gauss_e(&8.0f64);
        assert_eq!(naive, 0.0);
        let h = gauss_e_gap(-1, &-8.0f64);
        assert!((h + g).abs() < 1e-100);
        // s - E(y) on the "wrong" side is ≈ ±2.
        assert!((gauss_e_gap(1, &-3.0f64) - 2.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn gauss_e_is_bounded_and_increasing(x in -6.0f64..6.0, dx in 1e-3f64..0.5) {
            let a = gauss_e(&x);
            let b = gauss_e(&(x + dx));
            prop_assert!(a.abs() <= 1.0);
            prop_assert!(b >= a);
        }
    }

    #[test]
    fn gauss_e_strictly_increasing_on_grid() {
        let mut prev = gauss_e(&-3.0f64);
        for i in 1..=600 {
            let x = -3.0 + i as f64 * 0.01;
            let v = gauss_e(&x);
            assert!(v > prev, "not increasing at {x}");
            prev = v;
        }
    }
}
