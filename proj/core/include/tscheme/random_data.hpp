#pragma once

#include "tscheme/euler_state.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tscheme {

// Counter-based generator: every value is a pure function of (seed, stream, counter).
// value = splitmix64(splitmix64(seed ^ (stream * K1)) + counter * K2), uniform doubles use the top 53 bits.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    std::uint64_t next_u64() { return counter_u64(seed_, stream_, counter_++); }
    double uniform() { return counter_uniform(seed_, stream_, counter_++); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Unbiased integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);
    std::vector<std::size_t> permutation(std::size_t n);

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

struct KLData {
    static constexpr int terms = 3;
    std::array<double, 3> Y{};

    static double lambda(int l) { return l == 1 ? 1.0 : (l == 2 ? 0.5 : 0.25); }
};

struct RoughData {
    std::array<double, 3> Y{};
    double eps = 0.2;

    double amplitude() const { return 1.0 + eps * Y[0]; }
    double left_edge() const { return 1.0 / 3.0 + eps * Y[1]; }
    double right_edge() const { return 2.0 / 3.0 + eps * Y[2]; }
};

struct SodData {
    std::array<double, 5> Y{};
    double rho_l = 1.0;
    double p_l = 1.0;
    double rho_r = 0.4;
    double p_r = 0.4;
    double eps = 0.1;

    double interface() const { return 0.5 + eps * Y[1]; }
    Primitive left() const { return {rho_l + eps * Y[0], 0.0, p_l + eps * Y[3]}; }
    Primitive right() const { return {rho_r + eps * Y[2], 0.0, p_r + eps * Y[4]}; }
};

double eval_kl(const KLData& d, double x);
double eval_rough(const RoughData& d, double x);
Primitive eval_sod(const SodData& d, double x);

// Exact means over [a, b], used to initialise cell-centred grids.
double average_kl(const KLData& d, double a, double b);
double average_rough(const RoughData& d, double a, double b);
Conserved average_sod(const SodData& d, double a, double b, double gamma);

void validate(const RoughData& d);
void validate(const SodData& d);

enum class Family { Oscillator, Logistic, KarhunenLoeve, Rough, Sod };

std::string_view family_name(Family f);
Family family_from_name(std::string_view name);
int family_dimension(Family f);

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

struct SampleRanges {
    std::vector<Range> train;
    std::vector<Range> test;
};

SampleRanges default_ranges(Family f);

using Record = std::vector<double>;

struct Dataset {
    Family family = Family::KarhunenLoeve;
    std::uint64_t seed = 0;
    std::vector<Record> train;
    std::vector<Record> test;
};

// Train record i draws from stream i, test record i from stream 2^32 + i.
Dataset sample_dataset(Family family, int train_size, int test_size, std::uint64_t seed, const SampleRanges& ranges);
Dataset sample_dataset(Family family, int train_size, int test_size, std::uint64_t seed);

KLData kl_from(std::span<const double> record);
RoughData rough_from(std::span<const double> record);
SodData sod_from(std::span<const double> record);

std::string dataset_to_json(const Dataset& d);
Dataset dataset_from_json(std::string_view text);

}
