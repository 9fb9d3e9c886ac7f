use std::io::Write;

fn main() {
    let (code, text) = qpskew::cli::run(std::env::args_os());
    // a closed pipe (e.g. `| head`) is not worth a panic
    let _ = if code == 0 {
        writeln!(std::io::stdout(), "{text}")
    } else {
        writeln!(std::io::stderr(), "{text}")
    };
    std::process::exit(code);
}
