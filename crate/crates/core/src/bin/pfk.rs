use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let env_cap = std::env::var("PFK_CAP").ok();
    let exec = pfk::cli::run(&argv, env_cap.as_deref());
    let mut code = exec.code;
    for (path, text) in &exec.files {
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("pfk: cannot write {}: {e}", path.display());
            code = 2;
        }
    }
    if !exec.report.is_empty() {
        let stream = if exec.code == 2 && !exec.report.starts_with('{') { 2 } else { 1 };
        if stream == 2 {
            eprint!("{}", exec.report);
        } else {
            let _ = std::io::stdout().write_all(exec.report.as_bytes());
        }
    }
    ExitCode::from(code as u8)
}
