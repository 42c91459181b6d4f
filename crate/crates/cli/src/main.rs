use std::process::exit;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    // exponent overflow and other internal aborts surface as panics;
    // map them to the resource exit code instead of a raw crash
    let outcome = std::panic::catch_unwind(|| dreg_cli::run_command(&args));
    match outcome {
        Ok(code) => exit(code),
        Err(_) => {
            eprintln!("aborted: internal computation failed (see message above)");
            exit(4);
        }
    }
}
