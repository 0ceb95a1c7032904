#include <cstdlib>
#include <cstring>

#include "simplex_spectra/error.hpp"
#include "simplex_spectra/simd.hpp"

namespace simplex_spectra::simd {

#if defined(SIMPLEX_SPECTRA_HAVE_AVX2)
const Kernels& avx2_kernels();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(SIMPLEX_SPECTRA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Kernels& pick() {
  const char* env = std::getenv("SIMPLEX_SPECTRA_ISA");
  if (env && std::strcmp(env, "scalar") == 0) return scalar_kernels();
#if defined(SIMPLEX_SPECTRA_HAVE_AVX2)
  if (cpu_has_avx2()) return avx2_kernels();
#endif
  return scalar_kernels();
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2: return cpu_has_avx2();
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::Scalar};
  if (isa_available(Isa::Avx2)) out.push_back(Isa::Avx2);
  return out;
}

const Kernels& kernels_for(Isa isa) {
  if (!isa_available(isa)) throw DomainError(std::string("ISA not available on this CPU: ") + isa_name(isa));
#if defined(SIMPLEX_SPECTRA_HAVE_AVX2)
  if (isa == Isa::Avx2) return avx2_kernels();
#endif
  return scalar_kernels();
}

const Kernels& kernels() {
  static const Kernels& active = pick();
  return active;
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "?";
}

}  // namespace simplex_spectra::simd
