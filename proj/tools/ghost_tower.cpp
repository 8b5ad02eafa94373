#include "ghost/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"ghost-tower: exact ghost maps, Koszul objects and tower certificates"};
    std::string workspace_path;
    ghost::CliOptions opt;
    std::string out_path, family;
    std::vector<std::string> args;
    app.add_option("-w,--workspace", workspace_path, "workspace file (.gt)");
    app.add_option("-o,--out", out_path, "write the certificate to this JSON file");
    app.add_option("--family", family, "comma-separated module names (decompose-e)");
    app.add_option("command", args, "subcommand and its arguments")->required();
    app.footer(
        "commands:\n"
        "  ext M N n | ca-search nmax M1 M2 ... | ghost f | tr X r | koszul r X\n"
        "  adams X n | decompose-g X r n | decompose-e X r n | shuffle t r\n"
        "  modr-split X r | dim-bound level n | verify cert.json\n"
        "exit status: 0 success, 1 rejected or not annihilated, 2 input error");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : ghost::kInputError;
    }
    if (!out_path.empty()) opt.out = out_path;
    std::stringstream fs(family);
    for (std::string name; std::getline(fs, name, ',');)
        if (!name.empty()) opt.family.push_back(name);

    std::optional<ghost::Workspace> ws;
    if (!workspace_path.empty()) {
        std::ifstream in(workspace_path);
        if (!in) {
            std::cerr << "error: cannot read '" << workspace_path << "'\n";
            return ghost::kInputError;
        }
        std::stringstream text;
        text << in.rdbuf();
        try {
            ws = ghost::parse_workspace(text.str());
        } catch (const ghost::WorkspaceError& e) {
            std::cerr << workspace_path << ":" << e.what() << '\n';
            return ghost::kInputError;
        }
    }
    return ghost::run_command(ws ? &*ws : nullptr, args, opt, std::cout, std::cerr);
}
