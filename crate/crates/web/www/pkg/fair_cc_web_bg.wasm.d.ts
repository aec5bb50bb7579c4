/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_demo_free: (a: number, b: number) => void;
export const demo_bestSweep: (a: number, b: number, c: number) => [number, number, number, number];
export const demo_colors: (a: number) => [number, number];
export const demo_js_new: (a: number, b: number, c: number, d: number) => [number, number, number];
export const demo_metric: (a: number) => [number, number];
export const demo_n: (a: number) => number;
export const demo_planted: (a: number) => [number, number];
export const demo_round: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const demo_signs: (a: number) => [number, number];
export const demo_solveLp: (a: number) => [number, number, number, number];
export const __externref_table_alloc: () => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
