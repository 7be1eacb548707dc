#include "sentimark/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sentimark/csv.hpp"
#include "sentimark/errors.hpp"

namespace sentimark {

namespace {

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::MissingInput, "cannot write '" + path + "'");
    return out;
}

}  // namespace

std::uint64_t fnv1a_digest(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string digest_hex(std::uint64_t digest) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(digest));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::MissingInput, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_scored_csv(const std::string& path,
                      const std::vector<ScoredDocument>& scores) {
    auto out = open_out(path);
    out << "doc_id,bucket,score,n_pos,n_neg,n_neu\n";
    for (const auto& s : scores) {
        write_csv_row(out, {s.doc_id, format_bucket(s.bucket), fmt(s.score),
                            std::to_string(s.counts.n_positive),
                            std::to_string(s.counts.n_negative),
                            std::to_string(s.counts.n_neutral)});
    }
}

void write_series_csv(const std::string& path,
                      const std::array<SentimentSeries, 4>& series) {
    auto out = open_out(path);
    out << "dataset,bucket,mean_score,n_docs\n";
    for (const auto& s : series) {
        for (const auto& [bucket, point] : s.points) {
            write_csv_row(out, {dataset_name(s.dataset), format_bucket(bucket),
                                fmt(point.mean_score),
                                std::to_string(point.n_docs)});
        }
    }
}

void write_selection_csv(const std::string& path,
                         const std::vector<TermSelection>& selections) {
    auto out = open_out(path);
    out << "term,count_event,total_event,count_base,total_base,chi2,p,selected\n";
    for (const auto& s : selections) {
        write_csv_row(out, {s.term, std::to_string(s.count_event),
                            std::to_string(s.total_event),
                            std::to_string(s.count_base),
                            std::to_string(s.total_base), fmt(s.chi2),
                            fmt(s.p_value), s.selected ? "1" : "0"});
    }
}

void write_grid_csv(const std::string& path, const std::vector<FitResult>& grid) {
    auto out = open_out(path);
    out << "dataset,body_type,n,adj_r2,stat";
    for (const char* name : kRegressorNames) out << "," << name;
    out << ",error\n";
    for (const auto& cell : grid) {
        auto prefix = [&](const char* stat) {
            std::vector<std::string> row = {dataset_name(cell.dataset),
                                            body_type_name(cell.body_type),
                                            std::to_string(cell.n),
                                            cell.ok() ? fmt(cell.adj_r2) : "",
                                            stat};
            return row;
        };
        if (!cell.ok()) {
            auto row = prefix("error");
            row.resize(5 + kRegressorNames.size());
            row.push_back(cell.error);
            write_csv_row(out, row);
            continue;
        }
        const char* stats[] = {"coef", "se", "t", "p", "stars"};
        for (const char* stat : stats) {
            auto row = prefix(stat);
            for (const auto& r : cell.regressors) {
                if (r.dropped) {
                    row.push_back("");
                    continue;
                }
                std::string v;
                if (stat == std::string("coef")) v = fmt(r.coef);
                else if (stat == std::string("se")) v = fmt(r.se);
                else if (stat == std::string("t")) v = fmt(r.t);
                else if (stat == std::string("p")) v = fmt(r.p);
                else v = r.stars;
                row.push_back(std::move(v));
            }
            row.push_back("");
            write_csv_row(out, row);
        }
    }
}

void write_grid_pretty(std::ostream& out, const std::vector<FitResult>& grid) {
    out << "Hedonic price regressions, one cell per dataset x body type\n";
    out << "(stars: ** p<.01, * p<.05)\n\n";
    for (const auto& cell : grid) {
        out << dataset_name(cell.dataset) << " / " << body_type_name(cell.body_type)
            << "  n=" << cell.n;
        if (!cell.ok()) {
            out << "  FAILED: " << cell.error << "\n\n";
            continue;
        }
        char adj[32];
        std::snprintf(adj, sizeof(adj), "%.3f", cell.adj_r2);
        out << "  adjR2=" << adj;
        if (cell.dropped_listings > 0) {
            out << "  (dropped " << cell.dropped_listings << " listings without S)";
        }
        out << "\n";
        out << "            ";
        for (const char* name : kRegressorNames) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%10s", name);
            out << buf;
        }
        out << "\n    coef    ";
        for (const auto& r : cell.regressors) {
            char buf[16];
            if (r.dropped) std::snprintf(buf, sizeof(buf), "%10s", "-");
            else {
                char val[16];
                std::snprintf(val, sizeof(val), "%.3f%s", r.coef, r.stars.c_str());
                std::snprintf(buf, sizeof(buf), "%10s", val);
            }
            out << buf;
        }
        out << "\n    se      ";
        for (const auto& r : cell.regressors) {
            char buf[16];
            if (r.dropped) std::snprintf(buf, sizeof(buf), "%10s", "-");
            else {
                char val[16];
                std::snprintf(val, sizeof(val), "%.3f", r.se);
                std::snprintf(buf, sizeof(buf), "%10s", val);
            }
            out << buf;
        }
        out << "\n\n";
    }
    // The S column is the quantity of interest; recap it.
    out << "S coefficient summary\n";
    for (const auto& cell : grid) {
        out << "  " << dataset_name(cell.dataset) << "/"
            << body_type_name(cell.body_type) << ": ";
        if (!cell.ok()) {
            out << "failed (" << cell.error << ")\n";
            continue;
        }
        const RegressorResult* s = cell.find("S");
        if (!s || s->dropped) {
            out << "dropped\n";
            continue;
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.4f%s (se %.4f, p %.4g)", s->coef,
                      s->stars.c_str(), s->se, s->p);
        out << buf << "\n";
    }
}

std::string grid_report_json(const std::vector<FitResult>& grid) {
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const auto& cell : grid) {
        nlohmann::ordered_json j;
        j["dataset"] = dataset_name(cell.dataset);
        j["body_type"] = body_type_name(cell.body_type);
        j["n"] = cell.n;
        j["dropped_listings"] = cell.dropped_listings;
        if (!cell.ok()) {
            j["error"] = cell.error;
        } else {
            j["r2"] = cell.r2;
            j["adj_r2"] = cell.adj_r2;
            j["sigma2"] = cell.sigma2;
            nlohmann::ordered_json regs = nlohmann::ordered_json::array();
            for (const auto& r : cell.regressors) {
                nlohmann::ordered_json rj;
                rj["name"] = r.name;
                if (r.dropped) {
                    rj["dropped"] = true;
                } else {
                    rj["coef"] = r.coef;
                    rj["se"] = r.se;
                    rj["t"] = r.t;
                    rj["p"] = r.p;
                    rj["stars"] = r.stars;
                }
                regs.push_back(std::move(rj));
            }
            j["regressors"] = std::move(regs);
            j["residuals"] = {{"mean", cell.residuals.mean},
                              {"stddev", cell.residuals.stddev},
                              {"min", cell.residuals.min},
                              {"max", cell.residuals.max}};
        }
        cells.push_back(std::move(j));
    }
    nlohmann::ordered_json root;
    root["cells"] = std::move(cells);
    return root.dump(2) + "\n";
}

StatsReport build_stats_report(const std::vector<CarListing>& listings,
                               const std::array<SentimentSeries, 4>& series,
                               const DeflatorTable& deflators,
                               const HalfMonthBucket& fb_start,
                               const HalfMonthBucket& fb_end) {
    StatsReport report;
    std::ostringstream out;
    out << "body_type,stat,n,LnP,X1,X2,X3,X4,X5,X6,X7,D_72,D_82,D_91,"
           "S_D1,S_D2,S_D3,S_D4\n";

    constexpr size_t kCols = 15;  // LnP, X1..X7, D_72..D_91, then 4 S columns
    double s_min = std::numeric_limits<double>::infinity();
    double s_max = -std::numeric_limits<double>::infinity();

    for (BodyType body : kAllBodyTypes) {
        std::vector<std::array<double, kCols>> rows;
        for (const auto& l : listings) {
            if (l.body_type != body) continue;
            HalfMonthBucket fb;
            try {
                fb = market_to_fb(l.issue_bucket);
            } catch (const PipelineError&) {
                continue;
            }
            if (!in_study_range(fb, fb_start, fb_end)) continue;
            // Keep listings with an S value in every dataset so the four S
            // columns describe the same rows.
            std::array<double, 4> s_vals{};
            bool all = true;
            for (size_t ds = 0; ds < 4 && all; ++ds) {
                auto it = series[ds].points.find(fb);
                if (it == series[ds].points.end()) all = false;
                else s_vals[ds] = it->second.mean_score;
            }
            if (!all) continue;
            std::array<double, kCols> row{};
            row[0] = std::log(deflate_price(l.nominal_price, l.issue_bucket, deflators));
            row[1] = l.transmission_automatic ? 1.0 : 0.0;
            row[2] = l.fuel == Fuel::Diesel ? 1.0 : 0.0;
            row[3] = l.fuel == Fuel::GasHybrid ? 1.0 : 0.0;
            row[4] = l.fuel == Fuel::Ev ? 1.0 : 0.0;
            row[5] = l.fuel == Fuel::Other ? 1.0 : 0.0;
            row[6] = l.age_years;
            row[7] = l.over_100k_km ? 1.0 : 0.0;
            for (size_t d = 0; d < kControlPeriods.size(); ++d) {
                row[8 + d] = l.issue_bucket == kControlPeriods[d] ? 1.0 : 0.0;
            }
            for (size_t ds = 0; ds < 4; ++ds) {
                row[11 + ds] = s_vals[ds];
                s_min = std::min(s_min, s_vals[ds]);
                s_max = std::max(s_max, s_vals[ds]);
            }
            rows.push_back(row);
        }
        if (rows.empty()) continue;
        const double n = static_cast<double>(rows.size());
        std::array<double, kCols> mean{}, stddev{}, mn{}, mx{};
        mn.fill(std::numeric_limits<double>::infinity());
        mx.fill(-std::numeric_limits<double>::infinity());
        for (const auto& row : rows) {
            for (size_t c = 0; c < kCols; ++c) {
                mean[c] += row[c];
                mn[c] = std::min(mn[c], row[c]);
                mx[c] = std::max(mx[c], row[c]);
            }
        }
        for (size_t c = 0; c < kCols; ++c) mean[c] /= n;
        for (const auto& row : rows) {
            for (size_t c = 0; c < kCols; ++c) {
                stddev[c] += (row[c] - mean[c]) * (row[c] - mean[c]);
            }
        }
        for (size_t c = 0; c < kCols; ++c) stddev[c] = std::sqrt(stddev[c] / n);

        auto emit = [&](const char* stat, const std::array<double, kCols>& vals) {
            out << body_type_name(body) << "," << stat << "," << rows.size();
            for (size_t c = 0; c < kCols; ++c) out << "," << fmt(vals[c], "%.6g");
            out << "\n";
        };
        emit("mean", mean);
        emit("std", stddev);
        emit("min", mn);
        emit("max", mx);
    }

    if (s_min <= s_max) {
        if (s_min < -2.0 || s_max > 2.0) {
            fail(Errc::Internal, "sentiment series outside [-2, 2]");
        }
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "S series range [%.4f, %.4f]; the source study reported "
                      "half-month means around 0.17-0.23 (advisory only)",
                      s_min, s_max);
        report.advisories.push_back(buf);
    }
    report.csv = out.str();
    return report;
}

std::string series_chart_svg(const std::array<SentimentSeries, 4>& series) {
    // Union of buckets, in order.
    std::set<HalfMonthBucket> bucket_set;
    for (const auto& s : series) {
        for (const auto& [bucket, _] : s.points) bucket_set.insert(bucket);
    }
    std::vector<HalfMonthBucket> buckets(bucket_set.begin(), bucket_set.end());

    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& s : series) {
        for (const auto& [_, point] : s.points) {
            if (first) {
                lo = hi = point.mean_score;
                first = false;
            }
            lo = std::min(lo, point.mean_score);
            hi = std::max(hi, point.mean_score);
        }
    }
    if (first) {
        lo = -1.0;
        hi = 1.0;
    }
    double pad = (hi - lo) * 0.1 + 1e-3;
    lo -= pad;
    hi += pad;

    constexpr double W = 900, H = 420;
    constexpr double ML = 60, MR = 20, MT = 20, MB = 70;
    const double plot_w = W - ML - MR;
    const double plot_h = H - MT - MB;
    auto xpos = [&](size_t i) {
        if (buckets.size() <= 1) return ML + plot_w / 2;
        return ML + plot_w * static_cast<double>(i) /
                        static_cast<double>(buckets.size() - 1);
    };
    auto ypos = [&](double v) { return MT + plot_h * (hi - v) / (hi - lo); };

    static constexpr std::array<const char*, 4> kColors = {"#1f77b4", "#d62728",
                                                           "#2ca02c", "#9467bd"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    // axes
    svg << "<line x1=\"" << ML << "\" y1=\"" << MT + plot_h << "\" x2=\""
        << ML + plot_w << "\" y2=\"" << MT + plot_h
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML
        << "\" y2=\"" << MT + plot_h << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    // y ticks
    for (int t = 0; t <= 4; ++t) {
        double v = lo + (hi - lo) * t / 4.0;
        double y = ypos(v);
        svg << "<line x1=\"" << ML - 4 << "\" y1=\"" << fmt(y, "%.2f")
            << "\" x2=\"" << ML << "\" y2=\"" << fmt(y, "%.2f")
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << ML - 8 << "\" y=\"" << fmt(y + 4, "%.2f")
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(v, "%.3f")
            << "</text>\n";
    }
    // x labels
    for (size_t i = 0; i < buckets.size(); ++i) {
        double x = xpos(i);
        svg << "<text x=\"" << fmt(x, "%.2f") << "\" y=\"" << MT + plot_h + 16
            << "\" font-size=\"10\" text-anchor=\"end\" transform=\"rotate(-45 "
            << fmt(x, "%.2f") << " " << MT + plot_h + 16 << ")\">"
            << format_bucket(buckets[i]) << "</text>\n";
    }
    // one polyline per dataset
    for (size_t ds = 0; ds < 4; ++ds) {
        std::ostringstream pts;
        bool any = false;
        for (size_t i = 0; i < buckets.size(); ++i) {
            auto it = series[ds].points.find(buckets[i]);
            if (it == series[ds].points.end()) continue;
            if (any) pts << " ";
            pts << fmt(xpos(i), "%.2f") << "," << fmt(ypos(it->second.mean_score), "%.2f");
            any = true;
        }
        svg << "<polyline fill=\"none\" stroke=\"" << kColors[ds]
            << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
        svg << "<text x=\"" << ML + 10 + 70 * static_cast<double>(ds) << "\" y=\""
            << MT + 12 << "\" font-size=\"12\" fill=\"" << kColors[ds] << "\">"
            << dataset_name(static_cast<Dataset>(ds)) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_manifest(const std::string& path, const std::vector<std::string>& files,
                    const std::string& base_dir, bool complete,
                    const std::string& note) {
    auto out = open_out(path);
    out << "# file\tfnv1a\tbytes\n";
    for (const auto& file : files) {
        std::string full = (std::filesystem::path(base_dir) / file).string();
        std::string data = read_file(full);
        out << file << "\tfnv1a:" << digest_hex(fnv1a_digest(data)) << "\t"
            << data.size() << "\n";
    }
    out << "complete: " << (complete ? "true" : "false") << "\n";
    if (!note.empty()) out << "note: " << note << "\n";
}

}  // namespace sentimark
