use std::io;

fn main() {
    let code = farey_lt_core::cli::main_with_args(
        std::env::args_os().skip(1),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
