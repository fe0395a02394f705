#include <benchmark/benchmark.h>

#include "cyseries/intrel.hpp"
#include "cyseries/mirror.hpp"
#include "cyseries/registry.hpp"
#include "cyseries/verifier.hpp"

using namespace cys;

namespace {

const ThetaOperator& case3() {
    static const ThetaOperator op = hypergeometric_operator(find_case("t3"));
    return op;
}

void BM_FrobeniusSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(frobenius_solve(case3(), n));
}
BENCHMARK(BM_FrobeniusSolve)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_BuildMirror(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_mirror(case3(), n));
}
BENCHMARK(BM_BuildMirror)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SeriesCompose(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MirrorData M = build_mirror(case3(), n);
    for (auto _ : state) benchmark::DoNotOptimize(compose(M.T_z, M.z_of_q));
}
BENCHMARK(BM_SeriesCompose)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_EvaluateT(benchmark::State& state) {
    const int digits = static_cast<int>(state.range(0));
    const MirrorData M = build_mirror(case3(), 100);
    const Real q = -exp(Real(-8L, digits));
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_T(M, q));
}
BENCHMARK(BM_EvaluateT)->Arg(50)->Arg(120)->Unit(benchmark::kMicrosecond);

void BM_Pslq(benchmark::State& state) {
    const int D = 100;
    std::vector<Real> v;
    Real acc(0L, D);
    const long coef[] = {1234, -5678, 91, 4321};
    const long primes[] = {2, 3, 5, 7};
    for (int i = 0; i < 4; ++i) {
        v.push_back(log(Real(primes[i], D)));
        acc += v.back() * coef[i];
    }
    v.push_back(-acc / 777L);
    for (auto _ : state) benchmark::DoNotOptimize(pslq(v, Integer(10000), D));
}
BENCHMARK(BM_Pslq)->Unit(benchmark::kMillisecond);

void BM_VerifySextic(benchmark::State& state) {
    FormulaRecord f;
    f.seq = "fact(6*n)/fact(n)^6";
    f.z = Rational(1, 1000000);
    f.a = 9;
    f.b = 126;
    f.c = 532;
    f.rhs = Rational(375, 4);
    const int digits = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(verify_formula(f, digits));
}
BENCHMARK(BM_VerifySextic)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Supercongruence(benchmark::State& state) {
    CongruenceSpec s;
    s.seq = "binom(2*n,n)^3*binom(4*n,2*n)*binom(6*n,2*n)";
    s.z = Rational(1, 1000000);
    s.a = 9;
    s.b = 126;
    s.c = 532;
    s.mod_exp = 5;
    s.expected = 9;
    s.min_prime = 7;
    const long p = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(check_supercongruence(s, p));
}
BENCHMARK(BM_Supercongruence)->Arg(19)->Arg(47)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
