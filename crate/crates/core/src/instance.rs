//! An instance pairs a hypothesis class with its marginal, plus optional
//! names, and has a TOML text format:
//!
//! ```toml
//! domain_size = 4
//! masses = [0.25, 0.25, 0.25, 0.25]
//! hypotheses = ["0011", "0111"]
//! point_names = ["a", "b", "c", "d"]      # optional
//! hypothesis_names = ["t2", "t1"]          # optional
//! ```
//!
//! Masses are written with shortest round-trip formatting, so load/save
//! is bit-exact.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{HypothesisClass, Marginal};

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub class: HypothesisClass,
    pub marginal: Marginal,
    pub point_names: Option<Vec<String>>,
    pub hypothesis_names: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct InstanceFile {
    domain_size: usize,
    masses: Vec<f64>,
    hypotheses: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    point_names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hypothesis_names: Option<Vec<String>>,
}

impl Instance {
    pub fn new(class: HypothesisClass, marginal: Marginal) -> Result<Self> {
        class.check_marginal(&marginal)?;
        Ok(Instance {
            class,
            marginal,
            point_names: None,
            hypothesis_names: None,
        })
    }

    pub fn with_hypothesis_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.class.n_hypotheses() {
            return Err(Error::SizeMismatch {
                what: "hypothesis names",
                expected: self.class.n_hypotheses(),
                got: names.len(),
            });
        }
        self.hypothesis_names = Some(names);
        Ok(self)
    }

    pub fn with_point_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.class.n_points() {
            return Err(Error::SizeMismatch {
                what: "point names",
                expected: self.class.n_points(),
                got: names.len(),
            });
        }
        self.point_names = Some(names);
        Ok(self)
    }

    pub fn n_hypotheses(&self) -> usize {
        self.class.n_hypotheses()
    }

    pub fn n_points(&self) -> usize {
        self.class.n_points()
    }

    pub fn distance(&self, h: usize, other: usize) -> Result<f64> {
        crate::space::distance(&self.class, &self.marginal, h, other)
    }

    pub fn hypothesis_name(&self, h: usize) -> String {
        match &self.hypothesis_names {
            Some(names) => names[h].clone(),
            None => format!("h{h}"),
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        let file = InstanceFile {
            domain_size: self.n_points(),
            masses: self.marginal.masses().to_vec(),
            hypotheses: (0..self.n_hypotheses()).map(|h| self.class.row_string(h)).collect(),
            point_names: self.point_names.clone(),
            hypothesis_names: self.hypothesis_names.clone(),
        };
        toml::to_string(&file).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let file: InstanceFile = toml::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if file.masses.len() != file.domain_size {
            return Err(Error::SizeMismatch {
                what: "masses vs domain_size",
                expected: file.domain_size,
                got: file.masses.len(),
            });
        }
        let class = HypothesisClass::from_bit_strings(&file.hypotheses)?;
        let marginal = Marginal::new(file.masses)?;
        let mut instance = Instance::new(class, marginal)?;
        if let Some(names) = file.point_names {
            instance = instance.with_point_names(names)?;
        }
        if let Some(names) = file.hypothesis_names {
            instance = instance.with_hypothesis_names(names)?;
        }
        Ok(instance)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_toml()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Instance::from_toml(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let text = r#"
domain_size = 3
masses = [0.5, 0.25, 0.25]
hypotheses = ["011", "110"]
hypothesis_names = ["a", "b"]
"#;
        let inst = Instance::from_toml(text).unwrap();
        assert_eq!(inst.n_hypotheses(), 2);
        assert_eq!(inst.distance(0, 1).unwrap(), 0.75);
        assert_eq!(inst.hypothesis_name(1), "b");

        let bad_row = text.replace("\"110\"", "\"11\"");
        assert!(Instance::from_toml(&bad_row).is_err());
        let bad_char = text.replace("\"110\"", "\"1x0\"");
        assert!(Instance::from_toml(&bad_char).is_err());
        let bad_size = text.replace("domain_size = 3", "domain_size = 4");
        assert!(Instance::from_toml(&bad_size).is_err());
    }
}
