use std::f64::consts::TAU;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::gate::{exp_canonical, weyl_reduce, CanonicalGateVector};
use crate::hamiltonian::{is_ordered, pauli_decomposition, HamiltonianInput};
use crate::linalg::{Mat4, RealMatrix3, C64, I, ONE};
use crate::tolerance::Tolerance;

use super::json::matrix_from_json;

#[derive(Clone, Debug, PartialEq)]
pub enum NamedGate {
    Identity,
    Cnot,
    Cz,
    Swap,
    /// `|01> → i|10>`, `|10> → i|01>`.
    Xy,
    /// Same matrix as `Xy`.
    Iswap,
    /// `diag(1, 1, 1, e^{iθ})`.
    Cphase(f64),
    Canonical(CanonicalGateVector),
    Matrix(PathBuf),
}

fn numbers(s: &str, count: usize) -> Result<Vec<f64>> {
    let out = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::Parse(format!("{t:?} is not a finite number")))
        })
        .collect::<Result<Vec<f64>>>()?;
    if out.len() != count {
        return Err(Error::Parse(format!(
            "expected {count} numbers, got {:?}",
            s
        )));
    }
    Ok(out)
}

/// Splits `name:args` or `name(args)`.
fn split_args(spec: &str) -> (String, Option<&str>) {
    let spec = spec.trim();
    if let Some((name, rest)) = spec.split_once(':') {
        return (name.trim().to_ascii_lowercase(), Some(rest.trim()));
    }
    if let (Some(open), true) = (spec.find('('), spec.ends_with(')')) {
        return (
            spec[..open].trim().to_ascii_lowercase(),
            Some(spec[open + 1..spec.len() - 1].trim()),
        );
    }
    (spec.to_ascii_lowercase(), None)
}

impl NamedGate {
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, args) = split_args(spec);
        let no_args = |g: NamedGate| match args {
            None => Ok(g),
            Some(_) => Err(Error::Parse(format!("gate {name:?} takes no arguments"))),
        };
        match name.as_str() {
            "identity" | "id" => no_args(NamedGate::Identity),
            "cnot" => no_args(NamedGate::Cnot),
            "cz" => no_args(NamedGate::Cz),
            "swap" => no_args(NamedGate::Swap),
            "xy" => no_args(NamedGate::Xy),
            "iswap" => no_args(NamedGate::Iswap),
            "cphase" => {
                let theta = numbers(args.unwrap_or(""), 1)?[0];
                if !(theta > -TAU && theta <= TAU) {
                    return Err(Error::Parse(format!(
                        "cphase angle {theta} outside (-2π, 2π]"
                    )));
                }
                Ok(NamedGate::Cphase(theta))
            }
            "canonical" => {
                let v = numbers(args.unwrap_or(""), 3)?;
                Ok(NamedGate::Canonical(CanonicalGateVector::folded([
                    v[0], v[1], v[2],
                ])))
            }
            "matrix" => match args {
                Some(path) if !path.is_empty() => Ok(NamedGate::Matrix(PathBuf::from(path))),
                _ => Err(Error::Parse("matrix: needs a file path".into())),
            },
            _ => Err(Error::Parse(format!("unknown gate {spec:?}"))),
        }
    }

    /// The gate in the computational basis `|00>, |01>, |10>, |11>`.
    pub fn matrix(&self) -> Result<Mat4> {
        let permutation = |pairs: [(usize, usize, C64); 4]| {
            let mut m = Mat4::zeros();
            for (r, c, z) in pairs {
                m.0[r][c] = z;
            }
            m
        };
        Ok(match self {
            NamedGate::Identity => Mat4::identity(),
            NamedGate::Cnot => permutation([(0, 0, ONE), (1, 1, ONE), (2, 3, ONE), (3, 2, ONE)]),
            NamedGate::Cz => Mat4::diag([ONE, ONE, ONE, -ONE]),
            NamedGate::Swap => permutation([(0, 0, ONE), (1, 2, ONE), (2, 1, ONE), (3, 3, ONE)]),
            NamedGate::Xy | NamedGate::Iswap => {
                permutation([(0, 0, ONE), (1, 2, I), (2, 1, I), (3, 3, ONE)])
            }
            NamedGate::Cphase(theta) => Mat4::diag([ONE, ONE, ONE, C64::from_polar(1.0, *theta)]),
            NamedGate::Canonical(l) => exp_canonical(l.as_array()),
            NamedGate::Matrix(path) => matrix_from_json(&std::fs::read_to_string(path)?)?,
        })
    }
}

/// Parse a gate name and check that the result is unitary.
pub fn parse_gate(spec: &str, tol: &Tolerance) -> Result<Mat4> {
    let m = NamedGate::parse(spec)?.matrix()?;
    let residual = m.unitarity_residual();
    if !m.is_finite() || !(residual <= tol.matrix) {
        return Err(Error::NotUnitary { residual });
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParsedHamiltonian {
    pub input: HamiltonianInput,
    /// Non-fatal normalizations applied to the input.
    pub warnings: Vec<String>,
}

pub fn parse_hamiltonian(spec: &str, tol: &Tolerance) -> Result<ParsedHamiltonian> {
    let (name, args) = split_args(spec);
    let mut warnings = Vec::new();
    let input = match (name.as_str(), args) {
        ("ising", None) => HamiltonianInput::Vector([1.0, 0.0, 0.0]),
        ("ising", Some(a)) => {
            let h = numbers(a, 1)?[0];
            if !(h > 0.0) {
                return Err(Error::NonPositiveStrength(h));
            }
            HamiltonianInput::Vector([h, 0.0, 0.0])
        }
        ("xy", None) => HamiltonianInput::Vector([1.0, 1.0, 0.0]),
        ("heisenberg", None) => HamiltonianInput::Vector([1.0, 1.0, 1.0]),
        ("vec", Some(a)) => {
            let v = numbers(a, 3)?;
            let v = [v[0], v[1], v[2]];
            if !is_ordered(v, 0.0) {
                let r = weyl_reduce(v);
                warnings.push(format!(
                    "vector ({}, {}, {}) is not ordered; using equivalent ({}, {}, {})",
                    v[0], v[1], v[2], r[0], r[1], r[2]
                ));
                HamiltonianInput::Vector(r)
            } else {
                HamiltonianInput::Vector(v)
            }
        }
        ("coupling", Some(path)) => {
            let m: [[f64; 3]; 3] = serde_json::from_str(&std::fs::read_to_string(path)?)
                .map_err(|e| Error::Parse(format!("coupling JSON: {e}")))?;
            HamiltonianInput::Coupling(RealMatrix3(m))
        }
        ("matrix", Some(path)) => {
            let m = matrix_from_json(&std::fs::read_to_string(path)?)?;
            let residual = m.hermiticity_residual();
            if !(residual <= tol.matrix) {
                return Err(Error::NotHermitian { residual });
            }
            let local = pauli_decomposition(&m).local_magnitude();
            if local > tol.scalar {
                warnings.push(format!(
                    "single-qubit terms (up to {local:.3e}) are ignored; only the coupling matters"
                ));
            }
            HamiltonianInput::Hermitian(m)
        }
        _ => return Err(Error::Parse(format!("unknown Hamiltonian {spec:?}"))),
    };
    Ok(ParsedHamiltonian { input, warnings })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_4;

    use super::*;
    use crate::gate::canonical_vector;
    use crate::hamiltonian::canonical_hamiltonian;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn basis(k: usize) -> [C64; 4] {
        let mut v = [C64::new(0.0, 0.0); 4];
        v[k] = ONE;
        v
    }

    fn apply(m: &Mat4, v: [C64; 4]) -> [C64; 4] {
        let mut out = [C64::new(0.0, 0.0); 4];
        for i in 0..4 {
            out[i] = (0..4).map(|j| m.0[i][j] * v[j]).sum();
        }
        out
    }

    #[test]
    fn computational_basis_action() {
        let cnot = parse_gate("cnot", &tol()).unwrap();
        assert_eq!(apply(&cnot, basis(2)), basis(3));
        assert_eq!(apply(&cnot, basis(3)), basis(2));
        assert_eq!(apply(&cnot, basis(1)), basis(1));
        let swap = parse_gate("swap", &tol()).unwrap();
        assert_eq!(apply(&swap, basis(1)), basis(2));
        let xy = parse_gate("XY", &tol()).unwrap();
        assert_eq!(apply(&xy, basis(1)), basis(2).map(|z| z * I));
        assert_eq!(apply(&xy, basis(2)), basis(1).map(|z| z * I));
        assert_eq!(apply(&xy, basis(0)), basis(0));
        assert_eq!(apply(&xy, basis(3)), basis(3));
    }

    #[test]
    fn named_vectors() {
        let cv = |s: &str| {
            canonical_vector(&parse_gate(s, &tol()).unwrap())
                .unwrap()
                .as_array()
        };
        let close = |a: [f64; 3], b: [f64; 3]| (0..3).all(|k| (a[k] - b[k]).abs() < 1e-10);
        assert!(close(cv("cnot"), [FRAC_PI_4, 0.0, 0.0]));
        assert!(close(cv("cz"), [FRAC_PI_4, 0.0, 0.0]));
        assert!(close(cv("swap"), [FRAC_PI_4; 3]));
        assert!(close(cv("xy"), [FRAC_PI_4, FRAC_PI_4, 0.0]));
        assert!(close(cv("iswap"), [FRAC_PI_4, FRAC_PI_4, 0.0]));
        assert!(close(cv("identity"), [0.0; 3]));
        assert!(close(
            cv("cphase(3.141592653589793)"),
            [FRAC_PI_4, 0.0, 0.0]
        ));
        assert!(close(cv("cphase:1"), [0.25, 0.0, 0.0]));
        assert!(close(cv("canonical:0.3,0.2,-0.1"), [0.3, 0.2, -0.1]));
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "toffoli",
            "cnot:1",
            "cphase:7",
            "cphase",
            "canonical:1,2",
            "vec:1,2",
            "matrix:",
        ] {
            assert!(
                NamedGate::parse(bad).is_err() || parse_hamiltonian(bad, &tol()).is_err(),
                "{bad}"
            );
        }
        assert!(matches!(NamedGate::parse("cphase:x"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_hamiltonian("ising:0", &tol()),
            Err(Error::NonPositiveStrength(_))
        ));
    }

    #[test]
    fn hamiltonian_specs() {
        let h = |s: &str| {
            let p = parse_hamiltonian(s, &tol()).unwrap();
            (
                canonical_hamiltonian(&p.input).unwrap().as_array(),
                p.warnings.len(),
            )
        };
        assert_eq!(h("heisenberg"), ([1.0, 1.0, 1.0], 0));
        assert_eq!(h("ising"), ([1.0, 0.0, 0.0], 0));
        assert_eq!(h("ising:2.5"), ([2.5, 0.0, 0.0], 0));
        assert_eq!(h("xy"), ([1.0, 1.0, 0.0], 0));
        assert_eq!(h("vec:1,0.5,-0.2"), ([1.0, 0.5, -0.2], 0));
        assert_eq!(h("vec:0.2,1,0.5"), ([1.0, 0.5, 0.2], 1));
    }

    #[test]
    fn files() {
        let dir = std::env::temp_dir().join(format!("gatecost-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let cz = parse_gate("cz", &tol()).unwrap();
        let path = dir.join("cz.json");
        std::fs::write(&path, super::super::json::matrix_to_json(&cz).unwrap()).unwrap();
        let back = parse_gate(&format!("matrix:{}", path.display()), &tol()).unwrap();
        assert_eq!(back, cz);

        let coupling = dir.join("m.json");
        std::fs::write(&coupling, "[[0,0,0],[0,0,2],[0,-1,0]]").unwrap();
        let p = parse_hamiltonian(&format!("coupling:{}", coupling.display()), &tol()).unwrap();
        let v = canonical_hamiltonian(&p.input).unwrap().as_array();
        assert!((v[0] - 2.0).abs() < 1e-12 && (v[1] - 1.0).abs() < 1e-12 && v[2].abs() < 1e-12);

        // a non-Hermitian "Hamiltonian"
        let path = dir.join("xy.json");
        let xy = parse_gate("xy", &tol()).unwrap();
        std::fs::write(&path, super::super::json::matrix_to_json(&xy).unwrap()).unwrap();
        assert!(matches!(
            parse_hamiltonian(&format!("matrix:{}", path.display()), &tol()),
            Err(Error::NotHermitian { .. })
        ));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
