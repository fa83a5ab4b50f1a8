#include "fix/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace fix {

namespace {

constexpr const char* kHeader = "extractor\tscorer\tmean\tboot_std\tn\tseed";

std::string format_exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find('\t', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

void write_reports(const std::vector<EvalReport>& reports, std::ostream& out) {
    for (const EvalReport& r : reports) {
        for (const auto& [key, value] : r.config)
            out << "# config[" << r.extractor_id << "]: " << key << "=" << value << "\n";
        out << "# scores[" << r.extractor_id << "]:";
        for (double s : r.per_sample) out << " " << format_exact(s);
        out << "\n";
    }
    out << kHeader << "\n";
    for (const EvalReport& r : reports)
        out << r.extractor_id << "\t" << r.scorer_id << "\t" << format_exact(r.mean) << "\t"
            << format_exact(r.boot_std) << "\t" << r.n << "\t" << r.seed << "\n";
}

void write_reports(const std::vector<EvalReport>& reports, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    write_reports(reports, out);
}

std::vector<EvalReport> read_reports(std::istream& in) {
    std::vector<EvalReport> out;
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> configs;
    std::map<std::string, std::vector<double>> scores;
    std::string line;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::size_t open = line.find('[');
            const std::size_t close = line.find("]:", open);
            if (open == std::string::npos || close == std::string::npos) continue;
            const std::string id = line.substr(open + 1, close - open - 1);
            const std::string payload = line.substr(close + 2);
            if (line.rfind("# config[", 0) == 0) {
                const std::size_t eq = payload.find('=');
                if (eq == std::string::npos)
                    throw ParseError("report", line_no, "config line lacks '='");
                std::string key = payload.substr(0, eq);
                key.erase(0, key.find_first_not_of(' '));
                configs[id].emplace_back(key, payload.substr(eq + 1));
            } else if (line.rfind("# scores[", 0) == 0) {
                std::istringstream iss(payload);
                double v = 0.0;
                while (iss >> v) scores[id].push_back(v);
            }
            continue;
        }
        if (!header_seen) {
            if (line != kHeader)
                throw ParseError("report", line_no, "unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        const std::vector<std::string> fields = split_tabs(line);
        if (fields.size() != 6)
            throw ParseError("report", line_no, "expected 6 tab-separated columns");
        EvalReport r;
        r.extractor_id = fields[0];
        r.scorer_id = fields[1];
        try {
            r.mean = std::stod(fields[2]);
            r.boot_std = std::stod(fields[3]);
            r.n = static_cast<std::size_t>(std::stoull(fields[4]));
            r.seed = std::stoull(fields[5]);
        } catch (const std::exception&) {
            throw ParseError("report", line_no, "malformed numeric column");
        }
        if (auto it = configs.find(r.extractor_id); it != configs.end()) r.config = it->second;
        if (auto it = scores.find(r.extractor_id); it != scores.end()) r.per_sample = it->second;
        out.push_back(std::move(r));
    }
    if (!header_seen) throw ParseError("report", line_no, "missing header row");
    return out;
}

std::vector<EvalReport> read_reports(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "' for reading");
    return read_reports(in);
}

std::string format_table(const std::vector<EvalReport>& reports) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"extractor", "scorer", "mean", "boot_std", "n", "seed"});
    for (const EvalReport& r : reports) {
        char mean_buf[32], std_buf[32];
        std::snprintf(mean_buf, sizeof(mean_buf), "%.6f", r.mean);
        std::snprintf(std_buf, sizeof(std_buf), "%.6f", r.boot_std);
        rows.push_back({r.extractor_id, r.scorer_id, mean_buf, std_buf, std::to_string(r.n),
                        std::to_string(r.seed)});
    }
    std::vector<std::size_t> widths(rows[0].size(), 0);
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << std::left << std::setw(static_cast<int>(widths[c])) << row[c];
            out << (c + 1 == row.size() ? "\n" : "  ");
        }
    }
    return out.str();
}

} // namespace fix
