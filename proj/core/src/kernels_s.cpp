#define SMALLGEMM_KERNEL_T float
#include "kernels.tpp"
