use num_complex::Complex;
use serde::{Serialize, Serializer};

use crate::residue::{NondegeneracyReport, SimplicityReport, Verdict};
use crate::scalar::Real;

/// Complex number serialized as `{"re": …, "im": …}`.
///
/// Components are written in the shortest form that round-trips the `f64`
/// exactly, i.e. at most 17 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct C64(pub Complex<f64>);

impl C64 {
    pub fn from_r<R: Real>(z: Complex<R>) -> Self {
        C64(Complex::new(z.re.to_f64(), z.im.to_f64()))
    }
}

impl Serialize for C64 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Complex", 2)?;
        st.serialize_field("re", &self.0.re)?;
        st.serialize_field("im", &self.0.im)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointReport {
    pub y: C64,
    pub m: C64,
    pub l: C64,
    /// `Tor(M; 𝔤_ρ, γ)`.
    pub torsion: C64,
    /// `Tor(M; 𝔤_ρ, λ)`.
    pub torsion_lambda: C64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentReport {
    /// One-based component number.
    pub index: usize,
    pub points: Vec<PointReport>,
    pub inverse_sum: C64,
    /// Sign `σ` applied to this component's torsions in the total.
    pub sign: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexValue {
    pub genus: u32,
    pub value: C64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContainmentReport {
    pub strict: bool,
    pub witness: Option<Vec<i64>>,
}

/// Hypotheses and conclusion of the global residue theorem for `(A, B)` and `h = m² − m⁻²`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KhovanskiiReport {
    pub slope: [i64; 2],
    pub x: C64,
    pub nondegenerate: NondegeneracyReport,
    pub simplicity: SimplicityReport,
    /// Largest relative deviation of `Jac_(A,B)` from its closed form (figure-eight only).
    pub closed_form_jacobian_error: Option<f64>,
    pub containment: ContainmentReport,
    pub zero_count: usize,
    pub residue_sum: C64,
    /// `|Σ| / mean |term|`.
    pub residue_metric: f64,
    /// Largest `|1/Tor − 2x·term|` over matched zeros, relative to `max |1/Tor|` (figure-eight only).
    pub cross_check_error: Option<f64>,
    pub verdict: Verdict,
}

impl KhovanskiiReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub preset: String,
    pub slope: [i64; 2],
    pub z: C64,
    pub x: C64,
    pub precision_bits: u32,
    pub components: Vec<ComponentReport>,
    pub total_sum: C64,
    pub vanishing_metric: f64,
    pub verdict: String,
    pub khovanskii: Option<KhovanskiiReport>,
    pub index_values: Option<Vec<IndexValue>>,
    pub elapsed_ms: Option<u64>,
    pub warnings: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }

    pub fn point_count(&self) -> usize {
        self.components.iter().map(|c| c.points.len()).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
