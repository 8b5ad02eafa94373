#pragma once

#include "ghost/types.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ghost {

// Message is "line:col: text".
class WorkspaceError : public std::runtime_error {
public:
    WorkspaceError(int line, int col, const std::string& msg)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

// Text format, one declaration per statement, `#` starts a comment:
//
//   ring Z/4
//   module M gens 1 rels [[2]]
//   complex X { -1: module M ; 0: inline gens 1 rels [] ; diff -1: [[2]] }
//   map f : X -> X { 0: [[1]] }
//   triangle t : cone f
//
// Matrix rows are images of generators; `[]` is a matrix with no rows.
struct Workspace {
    Ring ring;
    bool has_ring = false;

    struct MapDecl {
        std::string source, target;
        ChainMap map;
        bool operator==(const MapDecl& o) const {
            return source == o.source && target == o.target && map.source == o.map.source &&
                   map.target == o.map.target && map.comps == o.map.comps;
        }
    };

    std::vector<std::pair<std::string, std::string>> order;  // (kind, name) in declaration order
    std::map<std::string, FpModule> modules;
    std::map<std::string, Complex> complexes;
    std::map<std::string, MapDecl> maps;
    std::map<std::string, std::string> triangles;  // name -> map whose cone triangle it is

    bool operator==(const Workspace& o) const {
        return ring == o.ring && has_ring == o.has_ring && order == o.order && modules == o.modules &&
               complexes == o.complexes && maps == o.maps && triangles == o.triangles;
    }

    // Modules are also accepted where a complex is expected (placed in degree 0).
    bool has_complex(const std::string& name) const { return complexes.count(name) || modules.count(name); }
    Complex complex(const std::string& name) const;
};

Workspace parse_workspace(std::string_view text);
std::string serialize_workspace(const Workspace& ws);

}  // namespace ghost
