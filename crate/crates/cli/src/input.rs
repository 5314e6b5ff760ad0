use std::fs;
use std::io::Read;
use std::path::PathBuf;

use graphstate::graphs::{parse_graph6, parse_graph6_lines};
use graphstate::{Axis, Graph, Sign, Step};

use crate::CliError;

/// Graphs from inline graph6 strings, `--input` files, or standard input.
/// An inline `-` (or no source at all) reads one graph per line from stdin.
pub fn read_graphs(inline: &[String], files: &[PathBuf]) -> Result<Vec<Graph>, CliError> {
    let mut graphs = Vec::new();
    let mut use_stdin = inline.is_empty() && files.is_empty();
    for text in inline {
        if text == "-" {
            use_stdin = true;
        } else {
            graphs.push(parse_graph6(text)?);
        }
    }
    for path in files {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        graphs.extend(parse_graph6_lines(&text)?);
    }
    if use_stdin {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        graphs.extend(parse_graph6_lines(&text)?);
    }
    if graphs.is_empty() {
        return Err(CliError::Usage("no input graphs".into()));
    }
    Ok(graphs)
}

/// Exactly one graph, for commands that act on a single input.
pub fn read_one_graph(inline: Option<&str>, files: &[PathBuf]) -> Result<Graph, CliError> {
    let inline: Vec<String> = inline.map(str::to_owned).into_iter().collect();
    let mut graphs = read_graphs(&inline, files)?;
    if graphs.len() != 1 {
        return Err(CliError::Usage(format!("expected one graph, got {}", graphs.len())));
    }
    Ok(graphs.remove(0))
}

/// Parses `vertex:basis:outcome`, e.g. `0:z:+`, `3:x:-1`.
pub fn parse_step(text: &str) -> Result<Step, CliError> {
    let bad = || CliError::Usage(format!("bad step {text:?}, expected vertex:basis:outcome such as 0:z:+"));
    let mut parts = text.split(':');
    let (Some(v), Some(b), Some(o), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
        return Err(bad());
    };
    let vertex = v.trim().parse().map_err(|_| bad())?;
    let basis = match b.trim().to_ascii_lowercase().as_str() {
        "x" => Axis::X,
        "y" => Axis::Y,
        "z" => Axis::Z,
        _ => return Err(bad()),
    };
    let outcome = match o.trim() {
        "+" | "+1" | "1" => Sign::Plus,
        "-" | "-1" => Sign::Minus,
        _ => return Err(bad()),
    };
    Ok(Step { vertex, basis, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steps() {
        let s = parse_step("2:Y:-1").unwrap();
        assert_eq!((s.vertex, s.basis, s.outcome), (2, Axis::Y, Sign::Minus));
        assert_eq!(parse_step("0:z:+").unwrap().outcome, Sign::Plus);
        for bad in ["", "0:z", "0:w:+", "a:z:+", "0:z:+:1", "0:z:0"] {
            assert!(parse_step(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn inline_graphs() {
        let gs = read_graphs(&["A_".into(), "Dhc".into()], &[]).unwrap();
        assert_eq!(gs.len(), 2);
        assert!(read_graphs(&["not graph6 \u{7f}".into()], &[]).is_err());
        assert!(read_one_graph(Some("A_"), &[]).is_ok());
    }
}
