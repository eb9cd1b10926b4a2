#define SMALLGEMM_KERNEL_T std::complex<double>
#include "kernels.tpp"
