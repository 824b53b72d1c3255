export interface Palette {
  name: string;
  /** Fill for nodes whose gender attribute is "F". */
  girl: string;
  /** Fill for nodes whose gender attribute is "M". */
  boy: string;
  unknown: string;
  edge: string;
  label: string;
  /** Ring drawn around mediator/influencer results. */
  highlight: string;
  /** Ring drawn around the currently selected person. */
  selected: string;
}

// The default follows the classic sociogram convention (pink girls, blue
// boys).  The alternate uses Okabe–Ito colours, distinguishable under the
// common forms of colour-vision deficiency.
export const PALETTES: Record<string, Palette> = {
  classic: {
    name: "classic",
    girl: "#f291b4",
    boy: "#6aa9e9",
    unknown: "#c2c2c2",
    edge: "#9a9a9a",
    label: "#333333",
    highlight: "#e6a817",
    selected: "#2e7d32",
  },
  colorblind: {
    name: "colorblind",
    girl: "#e69f00",
    boy: "#0072b2",
    unknown: "#999999",
    edge: "#8c8c8c",
    label: "#333333",
    highlight: "#009e73",
    selected: "#000000",
  },
};

export const DEFAULT_PALETTE = "classic";

export function paletteByName(name: string): Palette {
  return PALETTES[name] ?? PALETTES[DEFAULT_PALETTE]!;
}
