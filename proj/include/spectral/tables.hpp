#pragma once

#include <string>
#include <vector>

namespace spectral {

// One comparison between a regenerated quantity and its embedded reference
// value.  `expected` is the reference rendering (verbatim digits or a closed
// form), `computed` what this build produced.
struct TableCell {
    std::string row;
    std::string col;
    std::string expected;
    std::string computed;
    std::string note;
    bool ok = false;
};

struct TableReport {
    std::string name;
    std::vector<TableCell> cells;
    bool all_ok() const;
};

std::vector<std::string> table_names();  // {"I", "II", "III", "IV", "V"}

// Recomputes every entry of the named reference table end-to-end and diffs
// it against the embedded values.  `jobs` caps the worker threads used for
// independent cells.
TableReport regenerate_table(const std::string& name, int jobs = 1);

std::string render_report(const TableReport& rep);

// raw reference data, shared with the test suite
struct Table3Entry {
    int n;
    int d;
    const char* e18;  // 18-decimal eigenvalue, l = 0, a = b = 1
};
const std::vector<Table3Entry>& table3_entries();

struct Table4Entry {
    int label_n;   // row label as tabulated
    int actual_n;  // eigenvalue rank at these parameters
    const char* e18;
};
const std::vector<Table4Entry>& table4_entries();
const char* table4_radius_literal();  // the 18-digit caption radius

struct Table5Entry {
    int n;
    int l;
    int d;
    const char* e18;  // a = b = R = 1
};
const std::vector<Table5Entry>& table5_entries();

}  // namespace spectral
