#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgc/errors.hpp"

namespace sgc {

enum class Parity : uint8_t { Even = 0, Odd = 1 };

inline Parity operator^(Parity a, Parity b) {
    return Parity(uint8_t(a) ^ uint8_t(b));
}

constexpr int kMaxCoords = 4;

struct SymbolInfo {
    std::string name;
    Parity parity = Parity::Even;
    enum Kind : uint8_t { Coord, Field, Const } kind = Field;
    bool unit = false;      // invertible formal constant: integer powers of any sign
    uint16_t depends = 0;   // bitmask over coordinate indices (Field only)
    int coord_index = -1;   // Coord only
    bool has_components = false;
    std::array<int, 4> components{-1, -1, -1, -1};  // coefficients of 1, tp, tm, tp*tm
};

// Declared coordinates, fields and formal constants of one scenario. Owned by
// the scenario; expressions keep a pointer and never outlive it. Constants may
// be appended at any time (flow parameters, gauge unknowns); coordinates and
// fields are fixed once expressions exist over them.
class SymbolTable {
  public:
    int declare_coord(const std::string& name, Parity p) {
        if (int(coords_.size()) >= kMaxCoords) throw Error("too many coordinates");
        int id = add(name, p, SymbolInfo::Coord);
        syms_[id].coord_index = int(coords_.size());
        coords_.push_back(id);
        return id;
    }
    int declare_field(const std::string& name, Parity p, uint16_t depends) {
        int id = add(name, p, SymbolInfo::Field);
        syms_[id].depends = depends;
        return id;
    }
    int declare_const(const std::string& name, Parity p, bool unit = false) {
        int id = add(name, p, SymbolInfo::Const);
        syms_[id].unit = unit;
        return id;
    }

    void set_components(int field, const std::array<int, 4>& comp) {
        const Parity base = syms_[field].parity;
        const Parity want[4] = {base, base ^ Parity::Odd, base ^ Parity::Odd, base};
        for (int j = 0; j < 4; ++j)
            if (syms_[comp[j]].parity != want[j])
                throw ParityError("component parity pattern violated for " + syms_[field].name);
        syms_[field].has_components = true;
        syms_[field].components = comp;
    }

    uint16_t all_coords_mask() const { return uint16_t((1u << coords_.size()) - 1); }
    int coord_count() const { return int(coords_.size()); }
    int coord_id(int idx) const { return coords_[idx]; }
    Parity coord_parity(int idx) const { return syms_[coords_[idx]].parity; }

    const SymbolInfo& info(int id) const { return syms_[id]; }
    int size() const { return int(syms_.size()); }

    std::optional<int> find(const std::string& name) const {
        auto it = by_name_.find(name);
        if (it == by_name_.end()) return std::nullopt;
        return it->second;
    }
    int require(const std::string& name) const {
        auto id = find(name);
        if (!id) throw UndeclaredSymbol("undeclared symbol: " + name);
        return *id;
    }

  private:
    int add(const std::string& name, Parity p, SymbolInfo::Kind kind) {
        if (by_name_.count(name)) throw Error("symbol redeclared: " + name);
        SymbolInfo s;
        s.name = name;
        s.parity = p;
        s.kind = kind;
        syms_.push_back(std::move(s));
        by_name_[name] = int(syms_.size()) - 1;
        return int(syms_.size()) - 1;
    }

    std::vector<SymbolInfo> syms_;
    std::vector<int> coords_;
    std::map<std::string, int> by_name_;
};

}  // namespace sgc
