fn main() -> std::process::ExitCode {
    lp_steiner::cli::main()
}
