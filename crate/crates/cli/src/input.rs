use std::io::Read;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;
use slosh_iso::{Error, ShapeSpec};

use crate::CliError;

/// A shape spec with the identifier used in reports.
#[derive(Debug, Clone)]
pub struct NamedShape {
    pub id: String,
    pub spec: ShapeSpec,
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("<stdin>: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

/// Accepts one object, an array of objects, or whitespace-separated objects.
/// An optional string `"id"` names each shape; otherwise the spec's label is used.
pub fn parse_shapes(text: &str) -> Result<Vec<NamedShape>, CliError> {
    let mut objects = Vec::new();
    for item in serde_json::Deserializer::from_str(text).into_iter::<Value>() {
        match item.map_err(|e| parse_error(format!("shape file: {e}")))? {
            Value::Array(items) => objects.extend(items),
            other => objects.push(other),
        }
    }
    if objects.is_empty() {
        return Err(parse_error("shape file contains no shapes".into()));
    }
    objects
        .into_iter()
        .enumerate()
        .map(|(i, mut obj)| {
            let id = match obj.as_object_mut().and_then(|m| m.remove("id")) {
                None => None,
                Some(Value::String(s)) if !s.is_empty() => Some(s),
                Some(other) => {
                    return Err(parse_error(format!(
                        "shape {i}: id must be a non-empty string, got {other}"
                    )))
                }
            };
            let spec = ShapeSpec::deserialize(obj).map_err(|e| parse_error(format!("shape {i}: {e}")))?;
            spec.validate().map_err(CliError::Core)?;
            let id = id.unwrap_or_else(|| spec.label());
            Ok(NamedShape { id, spec })
        })
        .collect()
}

fn parse_error(msg: String) -> CliError {
    CliError::Core(Error::Parse(msg))
}
