//! Real and complex scalars at a selectable working precision.
//!
//! Numeric code in this crate is generic over [`Real`]. Two tiers are
//! provided: `f64` (53-bit mantissa) and [`DoubleDouble`] (106-bit
//! mantissa). [`Precision`] maps a requested bit count onto a tier.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod dd;

pub use dd::DoubleDouble;

/// Complex number over a working-precision real type.
pub type ComplexScalar<R> = Complex<R>;

/// Floating-point field used by all numeric kernels.
pub trait Real: Float + FloatConst + Default + Debug + Display + Send + Sync + 'static {
    /// Mantissa bits of this type.
    const BITS: u32;

    fn from_f64(x: f64) -> Self;

    fn to_f64(self) -> f64;

    /// Widen to double-double; exact for both tiers.
    fn to_dd(self) -> DoubleDouble;

    fn from_dd(x: DoubleDouble) -> Self;

    /// Unit roundoff `2^-BITS`.
    fn unit_roundoff() -> Self {
        Self::from_f64(2f64.powi(-(Self::BITS as i32)))
    }

    fn from_i64(n: i64) -> Self {
        // i64 beyond 2^53 loses bits in the first cast; the remainder restores them.
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Self::from_f64(hi) + Self::from_f64(lo)
    }

    fn from_bigint(n: &BigInt) -> Self {
        let hi = n.to_f64().unwrap_or(f64::INFINITY);
        if !hi.is_finite() {
            return Self::from_f64(hi);
        }
        let rest = n - BigInt::from(hi as i128);
        let lo = rest.to_f64().unwrap_or(0.0);
        Self::from_f64(hi) + Self::from_f64(lo)
    }

    fn from_rational(q: &BigRational) -> Self {
        Self::from_bigint(q.numer()) / Self::from_bigint(q.denom())
    }
}

impl Real for f64 {
    const BITS: u32 = 53;

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn to_dd(self) -> DoubleDouble {
        DoubleDouble::from_f64(self)
    }

    fn from_dd(x: DoubleDouble) -> Self {
        x.to_f64()
    }
}

impl Real for DoubleDouble {
    const BITS: u32 = 106;

    fn from_f64(x: f64) -> Self {
        DoubleDouble(x.into())
    }

    fn to_f64(self) -> f64 {
        self.hi() + self.lo()
    }

    fn to_dd(self) -> DoubleDouble {
        self
    }

    fn from_dd(x: DoubleDouble) -> Self {
        x
    }
}

/// Shorthand for a real constant.
pub fn re<R: Real>(x: f64) -> R {
    R::from_f64(x)
}

pub fn cplx<R: Real>(re: f64, im: f64) -> Complex<R> {
    Complex::new(R::from_f64(re), R::from_f64(im))
}

pub fn to_c64<R: Real>(z: Complex<R>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn from_c64<R: Real>(z: Complex<f64>) -> Complex<R> {
    Complex::new(R::from_f64(z.re), R::from_f64(z.im))
}

/// Magnitude as `f64`; used for tolerance comparisons.
pub fn abs64<R: Real>(z: Complex<R>) -> f64 {
    z.norm().to_f64()
}

/// Tolerance factor relative to the 53-bit baseline: `2^(53 - bits)`.
pub fn precision_scale<R: Real>() -> f64 {
    2f64.powi(53 - R::BITS as i32)
}

/// Working precision requested by a caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision {
    pub bits: u32,
}

/// Concrete arithmetic tier backing a [`Precision`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    Double,
    DoubleDouble,
}

impl Precision {
    pub const DEFAULT: Precision = Precision { bits: 53 };

    pub fn new(bits: u32) -> Result<Self> {
        let p = Precision { bits };
        p.tier()?;
        Ok(p)
    }

    /// Smallest tier whose mantissa holds at least `bits` bits.
    pub fn tier(self) -> Result<Tier> {
        match self.bits {
            0 => Err(Error::Domain("precision must be positive".into())),
            1..=53 => Ok(Tier::Double),
            54..=106 => Ok(Tier::DoubleDouble),
            b => Err(Error::UnsupportedPrecision(b)),
        }
    }

    /// Bits actually carried by the selected tier.
    pub fn effective_bits(self) -> u32 {
        match self.tier() {
            Ok(Tier::Double) => 53,
            Ok(Tier::DoubleDouble) => 106,
            Err(_) => self.bits,
        }
    }

    pub fn doubled(self) -> Precision {
        Precision { bits: self.effective_bits() * 2 }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Dispatch a generic numeric routine on the tier selected by a [`Precision`].
#[macro_export]
macro_rules! with_precision {
    ($prec:expr, $R:ident => $body:expr) => {{
        match $crate::scalar::Precision::tier($prec)? {
            $crate::scalar::Tier::Double => {
                type $R = f64;
                $body
            }
            $crate::scalar::Tier::DoubleDouble => {
                type $R = $crate::scalar::DoubleDouble;
                $body
            }
        }
    }};
}
