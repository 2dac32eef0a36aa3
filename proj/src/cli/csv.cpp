#include "twinfocal/cli/csv.hpp"

#include "twinfocal/errors.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace twinfocal::cli {

std::string format_number(double v, int precision)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", precision, v);
    return buf;
}

std::string to_csv(const Table& table, int precision)
{
    std::string out;
    for (const auto& line : table.preamble)
        out += "# " + line + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out += (i ? "," : "") + table.columns[i];
    if (!table.columns.empty())
        out += "\n";
    for (const auto& row : table.rows) {
        if (!table.columns.empty() && row.size() != table.columns.size())
            throw std::invalid_argument("to_csv: row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += format_number(row[i], precision);
        }
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& contents)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open " + path + " for writing: " + std::strerror(errno));
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    f.close();
    if (!f)
        throw IoError("failed writing " + path);
}

}  // namespace twinfocal::cli
