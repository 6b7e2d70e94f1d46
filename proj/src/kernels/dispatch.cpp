#include <stdexcept>
#include <string>

#include "cardioload/kernels.hpp"

namespace cardioload::kernels {

namespace {

void check_extents(MinuteColumns in, MinuteOutputs out)
{
    const std::size_t n = in.hr.size();
    if (in.moving.size() != n || in.worn.size() != n || out.pct.size() != n || out.load.size() != n ||
        out.gate.size() != n) {
        throw std::invalid_argument("minute kernel: column lengths differ");
    }
}

} // namespace

std::string_view isa_name(Isa isa)
{
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool isa_supported(Isa isa)
{
    switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }
    return false;
}

Isa best_isa()
{
    static const Isa best = isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
    return best;
}

std::vector<Isa> supported_isas()
{
    std::vector<Isa> isas{Isa::scalar};
    if (isa_supported(Isa::avx2)) {
        isas.push_back(Isa::avx2);
    }
    return isas;
}

void minute_loads(Isa isa, const MinuteKernelParams& params, MinuteColumns in, MinuteOutputs out)
{
    check_extents(in, out);
    if (!isa_supported(isa)) {
        throw std::invalid_argument("minute kernel: ISA " + std::string(isa_name(isa)) + " not supported on this CPU");
    }
    switch (isa) {
    case Isa::scalar:
        minute_loads_scalar(params, in, out);
        return;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
        minute_loads_avx2(params, in, out);
#endif
        return;
    }
}

void minute_loads(const MinuteKernelParams& params, MinuteColumns in, MinuteOutputs out)
{
    minute_loads(best_isa(), params, in, out);
}

} // namespace cardioload::kernels
