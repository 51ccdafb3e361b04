/** UI strings. Evaluators are source-language speakers, so Spanish is the
 * default; English is kept for development and demos. */

import type { LikertDimension } from './types.js';

export interface Locale {
  appTitle: string;
  debateHeading: string;
  summariesHeading: string;
  best: string;
  worst: string;
  submit: string;
  retry: string;
  progress: (open: number) => string;
  allDone: string;
  alreadySubmitted: string;
  networkError: string;
  bwsInstructions: string;
  likertInstructions: string;
  scaleLabels: Record<1 | 2 | 3 | 4, string>;
  dimensions: Record<LikertDimension, { label: string; help: string }>;
}

export const es: Locale = {
  appTitle: 'Evaluación de resúmenes',
  debateHeading: 'Debate original',
  summariesHeading: 'Resúmenes',
  best: 'Mejor',
  worst: 'Peor',
  submit: 'Enviar',
  retry: 'Reintentar envío',
  progress: (open) => `Tareas pendientes: ${open}`,
  allDone: 'No quedan tareas pendientes. ¡Gracias!',
  alreadySubmitted: 'Esta tarea ya fue enviada; pasando a la siguiente.',
  networkError: 'No se pudo enviar. Tu respuesta está guardada; reintenta.',
  bwsInstructions:
    'Lee el debate y los cuatro resúmenes. Marca el mejor resumen y el peor.',
  likertInstructions:
    'Valora el resumen en cada dimensión, de 1 (Totalmente en desacuerdo) a 4 (Totalmente de acuerdo).',
  scaleLabels: {
    1: 'Totalmente en desacuerdo',
    2: 'En desacuerdo',
    3: 'De acuerdo',
    4: 'Totalmente de acuerdo',
  },
  dimensions: {
    informativeness: {
      label: 'Informatividad / Relevancia',
      help: 'El resumen recoge las ideas y posturas más relevantes del debate.',
    },
    fluency: {
      label: 'Fluidez / Legibilidad / Gramática',
      help: 'Las frases del resumen son gramaticalmente correctas y fáciles de leer y entender (tomando como referencia la fluidez del debate original).',
    },
    consistency: {
      label: 'Consistencia / Fidelidad',
      help: 'Las ideas o hechos que contiene el resumen aparecen en el debate original.',
    },
    creativity: {
      label: 'Creatividad',
      help: 'El resumen está redactado con sus propias palabras y frases, en lugar de copiar frases directamente del debate.',
    },
  },
};

export const en: Locale = {
  appTitle: 'Summary evaluation',
  debateHeading: 'Original debate',
  summariesHeading: 'Summaries',
  best: 'Best',
  worst: 'Worst',
  submit: 'Submit',
  retry: 'Retry submission',
  progress: (open) => `Open tasks: ${open}`,
  allDone: 'No tasks remaining. Thank you!',
  alreadySubmitted: 'This task was already submitted; moving to the next one.',
  networkError: 'Submission failed. Your answer is kept locally; retry.',
  bwsInstructions:
    'Read the debate and the four summaries. Mark the best summary and the worst one.',
  likertInstructions:
    'Rate the summary on each dimension, from 1 (Strongly disagree) to 4 (Strongly agree).',
  scaleLabels: {
    1: 'Strongly disagree',
    2: 'Disagree',
    3: 'Agree',
    4: 'Strongly agree',
  },
  dimensions: {
    informativeness: {
      label: 'Informativeness / Relevance',
      help: 'The summary captures the most relevant ideas and positions of the debate.',
    },
    fluency: {
      label: 'Fluency / Readability / Grammar',
      help: 'The summary sentences are grammatically correct and easy to read and understand (taking the fluency of the original debate as the baseline).',
    },
    consistency: {
      label: 'Consistency / Faithfulness',
      help: 'The ideas or facts in the summary appear in the original debate.',
    },
    creativity: {
      label: 'Creativity',
      help: 'The summary is written in its own words and sentences rather than copying sentences directly from the debate.',
    },
  },
};

export const locales = { es, en };

export function pickLocale(tag: string | null | undefined): Locale {
  if (tag && tag.toLowerCase().startsWith('en')) return en;
  return es;
}
