use serde_json::json;

#[derive(Debug)]
pub enum CliError {
    /// Invalid flags or flag combinations.
    Input(String),
    Lib(pjacobi::Error),
    Io(String),
    Assert { metric: &'static str, value: f64, tol: f64 },
}

impl From<pjacobi::Error> for CliError {
    fn from(e: pjacobi::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Lib(e) if e.is_input_error() => 2,
            CliError::Lib(_) => 3,
            CliError::Assert { .. } => 4,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (kind, message) = match self {
            CliError::Input(m) => ("input", m.clone()),
            CliError::Io(m) => ("io", m.clone()),
            CliError::Lib(e) => (e.kind(), e.to_string()),
            CliError::Assert { metric, value, tol } => {
                ("assert", format!("{metric} = {value:e} exceeds the tolerance {tol:e}"))
            }
        };
        let mut v = json!({ "error": kind, "message": message, "exit_code": self.exit_code() });
        if let CliError::Assert { metric, value, tol } = self {
            v["metric"] = json!(metric);
            v["value"] = json!(value);
            v["tolerance"] = json!(tol);
        }
        v
    }
}

pub fn input<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Input(msg.into()))
}
