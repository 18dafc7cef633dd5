//! Built-in input functions and basis-vector spec parsing.
//!
//! Named inputs: `gaussian` (e^{-q^2}), `paper-example` ((1-2q^2)e^{-q^2}),
//! `hermite:n` (n-th Hermite function), and `basis:parity:N:indices`
//! (moment-killing vector, e.g. `basis:even:2:0,1,2`).

use anyhow::{anyhow, bail, Context, Result};
use num::rational::BigRational;
use num::One;

use pgops::basicvec::{basic_vector, BasicVecError, BasicVectorSpec};
use pgops::hermite::hermite_function;
use pgops::{Parity, Poly, PolyGauss};

/// A resolved input function with its display label.
#[derive(Debug)]
pub struct NamedInput {
    pub label: String,
    pub func: PolyGauss,
    /// Present when the input is a basis vector.
    pub spec: Option<BasicVectorSpec>,
}

pub fn parse_parity(s: &str) -> Result<Parity> {
    match s {
        "even" => Ok(Parity::Even),
        "odd" => Ok(Parity::Odd),
        other => bail!("parity must be 'even' or 'odd', got '{other}'"),
    }
}

pub fn parse_indices(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| anyhow!("bad index '{part}' in '{s}'"))
        })
        .collect()
}

/// Builds a `BasicVectorSpec` from parity, declared order, and indices,
/// enforcing the count and distinctness rules.
pub fn basis_spec(parity: Parity, order: usize, indices: Vec<usize>) -> Result<BasicVectorSpec> {
    if indices.len() != order + 1 {
        bail!(
            "order {order} needs exactly {} indices, got {}",
            order + 1,
            indices.len()
        );
    }
    BasicVectorSpec::new(parity, indices).map_err(|e| match e {
        BasicVecError::DuplicateIndex { .. } => anyhow!(e).context("duplicate indices"),
        other => anyhow!(other),
    })
}

/// Parses the colon form `parity:N:indices`, e.g. `even:2:0,1,2`.
pub fn parse_basis_colon(s: &str) -> Result<BasicVectorSpec> {
    let parts: Vec<&str> = s.splitn(3, ':').collect();
    if parts.len() != 3 {
        bail!("basis spec must be parity:order:indices, got '{s}'");
    }
    let parity = parse_parity(parts[0])?;
    let order: usize = parts[1]
        .parse()
        .map_err(|_| anyhow!("bad order '{}' in basis spec '{s}'", parts[1]))?;
    let indices = parse_indices(parts[2])?;
    basis_spec(parity, order, indices)
}

/// Instantiates a basis spec as a function with a label.
pub fn realize_basis(spec: BasicVectorSpec) -> Result<NamedInput> {
    let func = basic_vector(&spec).context("building basis vector")?;
    let label = format!(
        "basis:{}:{}:{}",
        match spec.parity {
            Parity::Even => "even",
            Parity::Odd => "odd",
        },
        spec.order(),
        spec.indices
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(NamedInput {
        label,
        func,
        spec: Some(spec),
    })
}

/// Resolves a built-in function name.
pub fn builtin(name: &str) -> Result<NamedInput> {
    match name {
        "gaussian" => Ok(NamedInput {
            label: "gaussian".into(),
            func: PolyGauss::term(BigRational::one(), Poly::from_ints(&[1])),
            spec: None,
        }),
        "paper-example" => Ok(NamedInput {
            label: "paper-example".into(),
            func: PolyGauss::term(BigRational::one(), Poly::from_ints(&[1, 0, -2])),
            spec: None,
        }),
        _ => {
            if let Some(rest) = name.strip_prefix("hermite:") {
                let n: usize = rest
                    .parse()
                    .map_err(|_| anyhow!("bad Hermite index '{rest}' in '{name}'"))?;
                Ok(NamedInput {
                    label: name.to_string(),
                    func: hermite_function(n),
                    spec: None,
                })
            } else if let Some(rest) = name.strip_prefix("basis:") {
                realize_basis(parse_basis_colon(rest)?)
            } else {
                bail!(
                    "unknown function name '{name}' \
                     (built-ins: gaussian, paper-example, hermite:n, basis:parity:N:indices)"
                );
            }
        }
    }
}
