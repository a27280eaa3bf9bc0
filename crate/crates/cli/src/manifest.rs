//! Run manifest: the fully resolved configuration, the outputs written,
//! and every numerical note a rerun would need to interpret them.

use nlheat::config::Config;
use nlheat::error::Result;
use std::fmt::Write as _;
use std::path::Path;

pub struct Manifest {
    command: String,
    lines: Vec<(String, String)>,
    outputs: Vec<String>,
    warnings: Vec<String>,
    started: std::time::Instant,
}

impl Manifest {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            lines: Vec::new(),
            outputs: Vec::new(),
            warnings: Vec::new(),
            started: std::time::Instant::now(),
        }
    }

    pub fn note(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    pub fn output(&mut self, name: &str) {
        self.outputs.push(name.to_string());
    }

    pub fn warn(&mut self, message: impl std::fmt::Display) {
        self.warnings.push(message.to_string());
    }

    pub fn write(&self, dir: &Path, cfg: &Config) -> Result<()> {
        let mut text = String::new();
        let _ = writeln!(text, "command = {}", self.command);
        let _ = writeln!(text, "wall_seconds = {:.3}", self.started.elapsed().as_secs_f64());
        let _ = writeln!(text);
        let _ = writeln!(text, "[config]");
        text.push_str(&cfg.render());
        let _ = writeln!(text);
        let _ = writeln!(text, "[results]");
        for (k, v) in &self.lines {
            let _ = writeln!(text, "{k} = {v}");
        }
        let _ = writeln!(text);
        let _ = writeln!(text, "[outputs]");
        for o in &self.outputs {
            let _ = writeln!(text, "{o}");
        }
        if !self.warnings.is_empty() {
            let _ = writeln!(text);
            let _ = writeln!(text, "[warnings]");
            for w in &self.warnings {
                let _ = writeln!(text, "{w}");
            }
        }
        std::fs::write(dir.join("manifest.txt"), text)?;
        Ok(())
    }
}
