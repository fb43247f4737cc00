/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_views_free: (a: number, b: number) => void;
export const connectivity_views: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const entropy_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const triplet_explorer: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const views_channels: (a: number) => number;
export const views_mi: (a: number) => [number, number];
export const views_oinfo: (a: number) => [number, number];
export const views_pearson: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
