use serde_json::{json, Map, Value};

/// Integers go out as decimal strings so large lengths survive JSON readers
/// limited to 53-bit numbers.
pub fn int(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

pub fn ints<T: ToString>(xs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(xs.into_iter().map(int).collect())
}

pub fn strs<T: ToString>(xs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(xs.into_iter().map(|x| Value::String(x.to_string())).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// An expectation mismatch or a failed audit.
    Mismatch,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub result: Value,
    pub certificates: Value,
    pub bounds: Value,
    pub text: String,
    pub outcome: Outcome,
}

impl Report {
    pub fn new(result: Value, text: String) -> Self {
        Report {
            result,
            certificates: Value::Array(Vec::new()),
            bounds: Value::Object(Map::new()),
            text,
            outcome: Outcome::Success,
        }
    }

    pub fn envelope(&self, seed: u64, characteristic: u64, input: &str) -> Value {
        json!({
            "tool": "samuel",
            "version": env!("CARGO_PKG_VERSION"),
            "seed": int(seed),
            "char": int(characteristic),
            "input": input,
            "result": self.result,
            "certificates": self.certificates,
            "bounds": self.bounds,
        })
    }
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_are_strings() {
        let r = Report::new(json!({ "e": ints([27, -15]) }), String::new());
        let v = r.envelope(0, 32003, "a.ideal");
        let text = serde_json::to_string(&v).unwrap();
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
        assert_eq!(back["char"], "32003");
        assert_eq!(back["result"]["e"][1], "-15");
        for key in [
            "tool",
            "version",
            "seed",
            "char",
            "input",
            "result",
            "certificates",
            "bounds",
        ] {
            assert!(back.get(key).is_some(), "{key}");
        }
    }
}
