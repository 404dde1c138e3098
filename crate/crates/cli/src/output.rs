use serde::Serialize;
use serde_json::{Number, Value};

use thermoprior::Error;

/// `{command, parameters, result, version}`.
#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    command: &'a str,
    parameters: Value,
    result: &'a T,
    version: &'static str,
}

impl<'a, T: Serialize> Envelope<'a, T> {
    pub fn new(command: &'a str, parameters: Value, result: &'a T) -> Self {
        Self {
            command,
            parameters,
            result,
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    /// Pretty JSON with every float written to 17 significant digits.
    pub fn render(&self) -> Result<String, Error> {
        let mut value = serde_json::to_value(self).map_err(|e| Error::Usage(e.to_string()))?;
        normalize_floats(&mut value);
        let mut text =
            serde_json::to_string_pretty(&value).map_err(|e| Error::Usage(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }
}

fn normalize_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.as_i64().is_none() && n.as_u64().is_none() => {
            if let Some(x) = n.as_f64() {
                if let Ok(m) = float17(x).parse::<Number>() {
                    *n = m;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(normalize_floats),
        Value::Object(map) => map.values_mut().for_each(normalize_floats),
        _ => {}
    }
}

/// 17 significant digits, which round-trips any `f64`.
pub fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

/// 12 significant digits, for text output.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}
