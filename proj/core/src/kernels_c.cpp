#define SMALLGEMM_KERNEL_T std::complex<float>
#include "kernels.tpp"
