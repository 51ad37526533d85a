//! Exact Gaussian rationals `a + b*i` with `a, b` in `Q`.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Gaussian = Complex<BigRational>;

pub fn from_int(n: i64) -> Gaussian {
    Complex::new(BigRational::from_integer(n.into()), BigRational::zero())
}

pub fn from_ratio(num: i64, den: i64) -> Gaussian {
    Complex::new(BigRational::new(num.into(), den.into()), BigRational::zero())
}

pub fn from_rational(r: BigRational) -> Gaussian {
    Complex::new(r, BigRational::zero())
}

/// `sqrt(-1)`.
pub fn imag_unit() -> Gaussian {
    Complex::new(BigRational::zero(), BigRational::one())
}

pub fn is_real(z: &Gaussian) -> bool {
    z.im.is_zero()
}

/// `|z|^2`, always rational.
pub fn modulus_sqr(z: &Gaussian) -> BigRational {
    z.norm_sqr()
}

pub fn to_c64(z: &Gaussian) -> Complex64 {
    Complex64::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator may overflow f64 individually
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn format_imag(im: &BigRational) -> String {
    if im.is_one() {
        "i".to_string()
    } else if *im == -BigRational::one() {
        "-i".to_string()
    } else if im.is_integer() {
        format!("{}i", im.numer())
    } else {
        format!("{}*i", format_rational(im))
    }
}

/// Canonical text form, readable back by the polynomial parser.
///
/// Purely real or purely imaginary values print bare (`-3/4`, `2i`,
/// `1/2*i`); mixed values are parenthesized (`(1-2i)`).
pub fn format_gaussian(z: &Gaussian) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => format_rational(&z.re),
        (true, false) => format_imag(&z.im),
        (false, false) => {
            let im = format_imag(&z.im.abs());
            let sign = if z.im.is_negative() { '-' } else { '+' };
            format!("({}{}{})", format_rational(&z.re), sign, im)
        }
    }
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        assert_eq!(imag_unit() * imag_unit(), from_int(-1));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_gaussian(&from_ratio(-3, 4)), "-3/4");
        assert_eq!(format_gaussian(&(imag_unit() * from_int(2))), "2i");
        assert_eq!(format_gaussian(&(imag_unit() * from_ratio(1, 2))), "1/2*i");
        assert_eq!(format_gaussian(&(from_int(1) - imag_unit() * from_int(2))), "(1-2i)");
        assert_eq!(format_gaussian(&-imag_unit()), "-i");
    }

    #[test]
    fn huge_rationals_convert_to_float() {
        let big = BigInt::from(10).pow(400);
        let r = BigRational::new(big.clone() * 3, big);
        assert!((rational_to_f64(&r) - 3.0).abs() < 1e-12);
    }
}
