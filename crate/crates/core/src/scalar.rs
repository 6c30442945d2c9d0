//! Complex scalars with tolerance-based comparison.

use num_complex::Complex64;

use crate::config::tolerance;

pub type Scalar = Complex64;

pub const ZERO: Scalar = Complex64::new(0.0, 0.0);
pub const ONE: Scalar = Complex64::new(1.0, 0.0);
pub const I: Scalar = Complex64::new(0.0, 1.0);

pub fn is_zero(z: Scalar) -> bool {
    z.norm() <= tolerance()
}

pub fn approx_eq(a: Scalar, b: Scalar) -> bool {
    (a - b).norm() <= tolerance()
}

/// `exp(2πik/n)`.
pub fn root_of_unity(n: u32, k: i64) -> Scalar {
    assert!(n > 0, "root of unity of order 0");
    let k = k.rem_euclid(n as i64);
    // Exact values for the quarter turns keep the common cases free of
    // rounding noise.
    if (4 * k) % n as i64 == 0 {
        return match (4 * k / n as i64) % 4 {
            0 => ONE,
            1 => I,
            2 => -ONE,
            _ => -I,
        };
    }
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
}

/// `(1 + i) / 2`, the phase used by the square-root gates.
pub fn half_one_plus_i() -> Scalar {
    Complex64::new(0.5, 0.5)
}

pub fn to_pair(z: Scalar) -> [f64; 2] {
    [z.re, z.im]
}

/// Compact human-readable form, `1`, `-i`, `0.5+0.5i`.
pub fn format(z: Scalar) -> String {
    let clean = |x: f64| if x.abs() <= tolerance() { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    let num = |x: f64| {
        let s = format!("{:.6}", x);
        let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
        if s == "-0" { "0".to_string() } else { s }
    };
    match (re == 0.0, im == 0.0) {
        (true, true) => "0".into(),
        (false, true) => num(re),
        (true, false) => match num(im).as_str() {
            "1" => "i".into(),
            "-1" => "-i".into(),
            s => format!("{s}i"),
        },
        (false, false) => {
            let sign = if im < 0.0 { "-" } else { "+" };
            let mag = num(im.abs());
            let mag = if mag == "1" { String::new() } else { mag };
            format!("{}{}{}i", num(re), sign, mag)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_not_phases_cancel() {
        let z = half_one_plus_i();
        assert!(is_zero(z * z + z.conj() * z.conj()));
        assert!(approx_eq(z * z.conj() * 2.0, ONE));
    }

    #[test]
    fn conj_is_involution() {
        let z = Complex64::new(0.3, -1.7);
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn fifth_root_to_the_fifth() {
        let w = root_of_unity(5, 1);
        assert!(approx_eq(w.powu(5), ONE));
        assert!(approx_eq(root_of_unity(5, 7), root_of_unity(5, 2)));
        assert_eq!(root_of_unity(4, 1), I);
        assert_eq!(root_of_unity(8, 6), -I);
    }

    #[test]
    fn formatting() {
        assert_eq!(format(ONE), "1");
        assert_eq!(format(-I), "-i");
        assert_eq!(format(half_one_plus_i()), "0.5+0.5i");
        assert_eq!(format(half_one_plus_i().conj()), "0.5-0.5i");
        assert_eq!(format(Complex64::new(1e-12, -1e-13)), "0");
    }
}
