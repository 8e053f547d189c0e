import { initApp } from './main.js';

// Same-origin by default: the service serves this client as static files.
const root = document.getElementById('app');
if (root) {
  initApp(root, '');
}
