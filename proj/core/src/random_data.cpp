#include "tscheme/random_data.hpp"

#include "tscheme/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace tscheme {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const std::uint64_t key = splitmix64(seed ^ (stream * 0xD6E8FEB86659FD93ULL));
    return splitmix64(key + counter * 0xD1B54A32D192ED03ULL);
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(counter_u64(seed, stream, counter) >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
    if (bound == 0) {
        throw InvalidArgument("RandomStream::below: bound must be positive");
    }
    constexpr std::uint64_t top = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = top - top % bound;
    std::uint64_t x = next_u64();
    while (x >= limit) {
        x = next_u64();
    }
    return x % bound;
}

std::vector<std::size_t> RandomStream::permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = i;
    }
    for (std::size_t i = n; i > 1; --i) {
        std::swap(p[i - 1], p[below(i)]);
    }
    return p;
}

double eval_kl(const KLData& d, double x) {
    double s = 0.0;
    for (int l = 1; l <= KLData::terms; ++l) {
        s += KLData::lambda(l) * d.Y[l - 1] * std::sin(l * std::numbers::pi * x);
    }
    return s;
}

double average_kl(const KLData& d, double a, double b) {
    double s = 0.0;
    for (int l = 1; l <= KLData::terms; ++l) {
        const double k = l * std::numbers::pi;
        s += KLData::lambda(l) * d.Y[l - 1] * (std::cos(k * a) - std::cos(k * b)) / k;
    }
    return s / (b - a);
}

void validate(const RoughData& d) {
    if (!(d.left_edge() < d.right_edge())) {
        throw InvalidSample("rough datum: left jump must lie left of the right jump");
    }
}

double eval_rough(const RoughData& d, double x) {
    validate(d);
    return (x > d.left_edge() && x < d.right_edge()) ? d.amplitude() : 0.0;
}

double average_rough(const RoughData& d, double a, double b) {
    validate(d);
    const double overlap = std::max(0.0, std::min(b, d.right_edge()) - std::max(a, d.left_edge()));
    return d.amplitude() * overlap / (b - a);
}

void validate(const SodData& d) {
    const Primitive l = d.left();
    const Primitive r = d.right();
    if (!(l.rho > 0.0 && l.p > 0.0 && r.rho > 0.0 && r.p > 0.0)) {
        throw InvalidSample("sod datum: perturbed density and pressure must stay positive");
    }
    const double x0 = d.interface();
    if (!(x0 > 0.0 && x0 < 1.0)) {
        throw InvalidSample("sod datum: interface outside (0, 1)");
    }
}

Primitive eval_sod(const SodData& d, double x) {
    validate(d);
    return x < d.interface() ? d.left() : d.right();
}

Conserved average_sod(const SodData& d, double a, double b, double gamma) {
    validate(d);
    const double frac = std::clamp((std::min(b, d.interface()) - a) / (b - a), 0.0, 1.0);
    const Primitive l = d.left();
    const Primitive r = d.right();
    const double rho = frac * l.rho + (1.0 - frac) * r.rho;
    const double energy = (frac * l.p + (1.0 - frac) * r.p) / (gamma - 1.0);
    return {rho, 0.0, energy};
}

std::string_view family_name(Family f) {
    switch (f) {
    case Family::Oscillator:
        return "oscillator";
    case Family::Logistic:
        return "logistic";
    case Family::KarhunenLoeve:
        return "kl";
    case Family::Rough:
        return "rough";
    case Family::Sod:
        return "sod";
    }
    return "unknown";
}

Family family_from_name(std::string_view name) {
    for (Family f : {Family::Oscillator, Family::Logistic, Family::KarhunenLoeve, Family::Rough, Family::Sod}) {
        if (family_name(f) == name) {
            return f;
        }
    }
    throw InvalidArgument("unknown data family '" + std::string(name) + "'");
}

int family_dimension(Family f) {
    switch (f) {
    case Family::Oscillator:
    case Family::Logistic:
        return 1;
    case Family::KarhunenLoeve:
    case Family::Rough:
        return 3;
    case Family::Sod:
        return 5;
    }
    return 0;
}

SampleRanges default_ranges(Family f) {
    switch (f) {
    case Family::Oscillator:
        return {{{0.0, 1.0}}, {{-5.0, 5.0}}};
    case Family::Logistic:
        return {{{0.0, 2.0}}, {{0.0, 5.0}}};
    case Family::KarhunenLoeve:
        return {std::vector<Range>(3, {0.0, 1.0}), std::vector<Range>(3, {0.0, 1.0})};
    case Family::Rough:
        return {std::vector<Range>(3, {-1.0, 1.0}), std::vector<Range>(3, {-1.0, 1.0})};
    case Family::Sod:
        return {std::vector<Range>(5, {-1.0, 1.0}), std::vector<Range>(5, {-1.0, 1.0})};
    }
    return {};
}

namespace {

constexpr std::uint64_t test_stream_offset = 1ULL << 32;

Record draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t attempt, const std::vector<Range>& ranges) {
    const std::size_t dim = ranges.size();
    Record r(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const double u = counter_uniform(seed, stream, attempt * dim + k);
        r[k] = ranges[k].lo + (ranges[k].hi - ranges[k].lo) * u;
    }
    return r;
}

void check_ranges(const std::vector<Range>& ranges, int dim, const char* split) {
    if (static_cast<int>(ranges.size()) != dim) {
        throw InvalidArgument(std::string("sample_dataset: ") + split + " ranges must have " + std::to_string(dim) +
                              " entries");
    }
    for (const Range& r : ranges) {
        if (!(r.lo <= r.hi)) {
            throw InvalidArgument(std::string("sample_dataset: empty ") + split + " range");
        }
    }
}

}

Dataset sample_dataset(Family family, int train_size, int test_size, std::uint64_t seed, const SampleRanges& ranges) {
    if (train_size < 1 || test_size < 1) {
        throw InvalidArgument("sample_dataset: sizes must be at least 1");
    }
    const int dim = family_dimension(family);
    check_ranges(ranges.train, dim, "train");
    check_ranges(ranges.test, dim, "test");

    // Draws that violate the datum's invariants (crossed jump edges) are redrawn from the same stream.
    auto admissible = [family](const Record& r) {
        try {
            if (family == Family::Rough) {
                validate(rough_from(r));
            } else if (family == Family::Sod) {
                validate(sod_from(r));
            }
            return true;
        } catch (const InvalidSample&) {
            return false;
        }
    };

    Dataset d;
    d.family = family;
    d.seed = seed;
    d.train.reserve(train_size);
    for (int i = 0; i < train_size; ++i) {
        const std::uint64_t stream = static_cast<std::uint64_t>(i);
        Record r = draw(seed, stream, 0, ranges.train);
        for (std::uint64_t attempt = 1; !admissible(r); ++attempt) {
            if (attempt > 1000) {
                throw InvalidArgument("sample_dataset: cannot draw an admissible training record");
            }
            r = draw(seed, stream, attempt, ranges.train);
        }
        d.train.push_back(std::move(r));
    }
    std::vector<Record> sorted_train = d.train;
    std::sort(sorted_train.begin(), sorted_train.end());
    d.test.reserve(test_size);
    for (int i = 0; i < test_size; ++i) {
        const std::uint64_t stream = test_stream_offset + static_cast<std::uint64_t>(i);
        Record r = draw(seed, stream, 0, ranges.test);
        for (std::uint64_t attempt = 1;
             !admissible(r) || std::binary_search(sorted_train.begin(), sorted_train.end(), r); ++attempt) {
            if (attempt > 1000) {
                throw InvalidArgument("sample_dataset: cannot draw an admissible test record");
            }
            r = draw(seed, stream, attempt, ranges.test);
        }
        d.test.push_back(std::move(r));
    }
    return d;
}

Dataset sample_dataset(Family family, int train_size, int test_size, std::uint64_t seed) {
    return sample_dataset(family, train_size, test_size, seed, default_ranges(family));
}

namespace {

template <std::size_t N>
std::array<double, N> take(std::span<const double> record, const char* what) {
    if (record.size() != N) {
        throw InvalidArgument(std::string(what) + ": record must have " + std::to_string(N) + " entries");
    }
    std::array<double, N> a{};
    std::copy(record.begin(), record.end(), a.begin());
    return a;
}

}

KLData kl_from(std::span<const double> record) {
    return KLData{take<3>(record, "kl_from")};
}

RoughData rough_from(std::span<const double> record) {
    RoughData d;
    d.Y = take<3>(record, "rough_from");
    return d;
}

SodData sod_from(std::span<const double> record) {
    SodData d;
    d.Y = take<5>(record, "sod_from");
    return d;
}

std::string dataset_to_json(const Dataset& d) {
    json j;
    j["schema"] = "tscheme.dataset/1";
    j["family"] = std::string(family_name(d.family));
    j["seed"] = d.seed;
    j["train"] = d.train;
    j["test"] = d.test;
    return j.dump(2);
}

Dataset dataset_from_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        if (j.at("schema").get<std::string>() != "tscheme.dataset/1") {
            throw InvalidArgument("dataset_from_json: unsupported schema");
        }
        Dataset d;
        d.family = family_from_name(j.at("family").get<std::string>());
        d.seed = j.at("seed").get<std::uint64_t>();
        d.train = j.at("train").get<std::vector<Record>>();
        d.test = j.at("test").get<std::vector<Record>>();
        return d;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("dataset_from_json: ") + e.what());
    }
}

}
