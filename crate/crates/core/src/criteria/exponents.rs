use serde::Serialize;

/// Whole space or half-space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Geometry {
    Whole,
    Half,
}

impl Geometry {
    pub fn name(self) -> &'static str {
        match self {
            Geometry::Whole => "whole",
            Geometry::Half => "half",
        }
    }
}

impl std::str::FromStr for Geometry {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "whole" => Ok(Geometry::Whole),
            "half" => Ok(Geometry::Half),
            _ => Err(crate::Error::Invalid(format!("geometry must be `whole` or `half`, got `{s}`"))),
        }
    }
}

/// Critical exponents in dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Exponents {
    pub n: u32,
    pub geometry: Geometry,
    /// Sobolev exponent `(n+2)/(n-2)`, infinite for `n ≤ 2`.
    pub p_sobolev: f64,
    /// Equals the Sobolev exponent for `n ≤ 4` and `(n-1)/(n-3)` above.
    pub p_star: f64,
    /// Upper end of the admissible window for systems: `p_star` in the whole
    /// space, `n/(n-2)` in the half-space.
    pub p_star_star: f64,
    /// `n/(n-2)`, infinite for `n ≤ 2`.
    pub kappa: f64,
}

pub fn exponents(n: u32, geometry: Geometry) -> Exponents {
    let nf = n as f64;
    let (p_sobolev, kappa) =
        if n >= 3 { ((nf + 2.0) / (nf - 2.0), nf / (nf - 2.0)) } else { (f64::INFINITY, f64::INFINITY) };
    let p_star = if n <= 4 { p_sobolev } else { (nf - 1.0) / (nf - 3.0) };
    let p_star_star = match geometry {
        Geometry::Whole => p_star,
        Geometry::Half => kappa,
    };
    Exponents { n, geometry, p_sobolev, p_star, p_star_star, kappa }
}
