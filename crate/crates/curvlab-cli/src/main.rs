fn main() {
    let code = curvlab_cli::run(std::env::args_os());
    std::process::exit(code);
}
